#!/usr/bin/env python3
"""
balwords - 平衡字计数、转移矩阵谱与 (x+1)^n − λx^p 单值群的命令行入口
"""

import argparse
import logging
import logging.handlers
import math
import re
import sys
from fractions import Fraction
from pathlib import Path
from typing import Callable, Dict, List, Tuple

import numpy as np

from asympt import Direction, critical_point, pemantle_estimate, tilde_e
from config import load_config
from graphwords import (
    conjecture_scan,
    count_balanced_paths,
    graph_growth,
    load_graph,
)
from monodromy import galois_classify
from poly import (
    PolyInstance,
    critical_data,
    modulus_ordering,
    modulus_pairing_check,
    roots,
)
from report import ReportWriter
from transfer import (
    bracket,
    build_M,
    convergents,
    count_spectrum_in,
    exact_determinant,
    full_spectrum,
    growth_exponent,
    irrational_growth,
    oscillation_scan,
    parse_real,
    prefix_counts_agree,
)
from words import (
    BalanceSpec,
    ReprojectionError,
    Word,
    check_continuity,
    continuity_rate,
    count_balanced_dp,
    count_unconstrained,
    enumerate_balanced,
    is_balanced,
    is_zero_insertion,
    jmax,
    reproject,
    sample_balanced,
)

TOOL_NAME = "balwords"
__version__ = "0.1.0"

logger = logging.getLogger(TOOL_NAME)

Result = Tuple[dict, Dict[str, bool], List[dict]]

_RATIONAL = re.compile(r"^\s*(\d+)\s*/\s*(\d+)\s*$")


def setup_logging(config: dict):
    log_dir = Path(config["logging"]["dir"])
    log_dir.mkdir(parents=True, exist_ok=True)

    # 文件处理器：DEBUG 级别，最多保留 7 个滚动文件，每个最大 10MB
    file_handler = logging.handlers.RotatingFileHandler(
        log_dir / config["logging"]["file"],
        maxBytes=10 * 1024 * 1024,
        backupCount=7,
        encoding="utf-8",
    )
    file_handler.setLevel(logging.DEBUG)
    file_handler.setFormatter(logging.Formatter(
        "%(asctime)s [%(levelname)s] %(name)s: %(message)s"
    ))

    # 控制台处理器：WARNING 级别，不干扰结果输出
    console_handler = logging.StreamHandler()
    console_handler.setLevel(logging.WARNING)
    console_handler.setFormatter(logging.Formatter("[%(levelname)s] %(message)s"))

    logging.basicConfig(level=logging.DEBUG, handlers=[file_handler, console_handler], force=True)


def parse_rational(text: str) -> Fraction:
    """只接受既约的 "p/q"，拒绝小数写法"""
    match = _RATIONAL.match(text)
    if not match:
        raise argparse.ArgumentTypeError(f"α 必须写成 p/q 形式，实际 {text!r}")
    p, q = int(match.group(1)), int(match.group(2))
    if not (0 < p < q):
        raise argparse.ArgumentTypeError(f"要求 0 < α < 1，实际 {text!r}")
    if math.gcd(p, q) != 1:
        raise argparse.ArgumentTypeError(f"{text!r} 不是既约分数")
    return Fraction(p, q)


def parse_int_list(text: str) -> List[int]:
    """"1-40" 或 "5,10,20,40" """
    values = []
    for part in text.split(","):
        part = part.strip()
        if "-" in part:
            lo, hi = part.split("-", 1)
            values.extend(range(int(lo), int(hi) + 1))
        elif part:
            values.append(int(part))
    if not values or any(v < 1 for v in values):
        raise argparse.ArgumentTypeError(f"无法解析的正整数列表：{text!r}")
    return values


def parse_word(text: str) -> Word:
    try:
        return Word.parse(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e))


def _monotone(values, strict: bool = False) -> bool:
    pairs = list(zip(values, values[1:]))
    return all(b > a for a, b in pairs) if strict else all(b >= a for a, b in pairs)


def cmd_count(args, config: dict) -> Result:
    spec = BalanceSpec.from_alpha(args.alpha, args.r)
    vec = count_balanced_dp(args.n, spec)
    free = count_unconstrained(args.n, spec)
    data = {
        "n": args.n,
        "alpha": args.alpha,
        "r": args.r,
        "balanced": vec.total,
        "unconstrained": free,
        "ratio": vec.total / free if free else 0.0,
        "by_deviation": list(vec.b),
    }
    print(f"|B| = {vec.total}    |B̃| = {free}")
    checks = {"balanced_le_unconstrained": vec.total <= free}
    cap = config["words"]["enumeration_cap"]
    if args.n <= cap:
        checks["oracle_agrees"] = len(enumerate_balanced(args.n, spec, max_n=cap)) == vec.total
    return data, checks, [
        {k: data[k] for k in ("n", "alpha", "r", "balanced", "unconstrained", "ratio")}
    ]


def cmd_growth(args, config: dict) -> Result:
    p, n = args.alpha.numerator, args.alpha.denominator
    spectrum = config["spectrum"]
    rows = []
    for r in args.r_list:
        est = growth_exponent(p, n, r, tol=spectrum["power_tol"], max_iter=spectrum["power_max_iter"])
        rows.append({
            "r": r,
            "perron": est.perron,
            "e_alpha_r": est.e_alpha_r,
            "tilde_e": est.entropy_limit,
            "gap": est.gap,
        })
        print(f"  r={r:>3}  e={est.e_alpha_r:.12f}  ẽ={est.entropy_limit:.12f}")
    ceiling = n**n / (p**p * (n - p) ** (n - p))
    checks = {
        "monotone_in_r": _monotone([row["e_alpha_r"] for row in rows], strict=True),
        "below_ceiling": all(row["perron"] < ceiling for row in rows),
    }
    return {"alpha": args.alpha, "rows": rows}, checks, rows


def cmd_spectrum(args, config: dict) -> Result:
    p, n = args.alpha.numerator, args.alpha.denominator
    tol = config["spectrum"]["eigen_residual"]
    rows = []
    eigenvalues = {}
    for r in args.r_list:
        M = build_M(p, n, r)
        report = full_spectrum(M, tol=tol, imag_threshold=config["spectrum"]["imag_threshold"])
        count = count_spectrum_in(p, n, r, args.lo, args.hi)
        grid = np.linspace(args.lo, args.hi, args.grid + 2)[1:-1]
        changes = oscillation_scan(p, n, r, grid)
        eigenvalues[r] = report.real_values()
        rows.append({
            "r": r,
            "count": count,
            "sign_changes": changes,
            "det": exact_determinant(M),
            "oscillation_property": report.oscillation_property,
            "perron": report.perron,
        })
        print(f"  r={r:>3}  区间内特征值: {count}  变号: {changes}")
    checks = {
        "counts_nondecreasing": _monotone([row["count"] for row in rows]),
        "det_is_one": all(row["det"] == 1 for row in rows),
        "scan_agrees": all(row["count"] == row["sign_changes"] for row in rows),
        "oscillation_property": all(row["oscillation_property"] for row in rows),
    }
    return {"alpha": args.alpha, "interval": [args.lo, args.hi], "rows": rows, "eigenvalues": eigenvalues}, checks, rows


def cmd_galois(args, config: dict) -> Result:
    tracking = config["tracking"]
    report = galois_classify(
        args.n,
        args.p,
        eps=tracking["eps"],
        ratio=tracking["critical_ratio"],
        samples=tracking["samples"],
        backend=args.backend,
        max_steps=tracking["max_steps"],
    )
    g = report.group
    data = {
        "n": args.n,
        "p": args.p,
        "order": g.order,
        "expected_order": report.expected_order,
        "is_symmetric": g.is_symmetric,
        "blocks": [sorted(b) for b in g.blocks] if g.blocks else None,
        "quotient_order": g.quotient_order,
        "quotient_cyclic": g.quotient_cyclic,
        "kernel_order": g.kernel_order,
        "zero_generator": str(report.zero_generator),
        "critical_generator": str(report.critical_generator),
        "predicted_pair": list(report.predicted_pair),
        "observed_pair": list(report.observed_pair),
    }
    print(f"  群的阶: {g.order}  期望: {report.expected_order}  对称群: {g.is_symmetric}")
    checks = {"classification": report.passed, "collision_matches": report.collision_matches}
    return data, checks, [data]


def _parse_lambda(text: str) -> complex:
    match = _RATIONAL.match(text)
    if match:
        return complex(Fraction(int(match.group(1)), int(match.group(2))))
    try:
        return complex(text.replace(" ", ""))
    except ValueError:
        raise argparse.ArgumentTypeError(f"无法解析的 λ：{text!r}")


def cmd_poly(args, config: dict) -> Result:
    inst = PolyInstance(args.n, args.p, args.lam)
    crit = critical_data(args.n, args.p)
    rs = roots(inst, tol=config["roots"]["residual"])
    order = np.lexsort((rs.roots.imag, rs.roots.real))
    values = rs.roots[order]
    data = {
        "n": args.n,
        "p": args.p,
        "lambda": args.lam,
        "lambda_crit": crit.lambda_exact,
        "double_root": crit.double_root_exact,
        "roots": values,
        "min_separation": rs.min_separation,
    }
    checks = {"critical_verified": crit.verified}

    lam = args.lam.real
    real = args.lam.imag == 0
    at_critical = real and math.isclose(lam, crit.lambda_crit, rel_tol=1e-12)
    if at_critical:
        d = np.abs(values[:, None] - values[None, :])
        np.fill_diagonal(d, np.inf)
        i, j = np.unravel_index(np.argmin(d), d.shape)
        merged = (values[i] + values[j]) / 2
        data["double_root_observed"] = merged
        checks["double_root_found"] = abs(merged - crit.double_root) < 1e-6
        print(f"  λ = λ_c，二重根 ≈ {merged.real:.12g}")
    elif real and lam != 0:
        tol = config["roots"]["modulus_equality"]
        checks["modulus_pairing"] = modulus_pairing_check(inst, tol=tol, values=rs.roots).passed
        if 0 < lam < crit.lambda_crit and (args.p % 2, args.n % 2) != (0, 0):
            ordering = modulus_ordering(inst, eps=config["tracking"]["eps"], tol=tol)
            data["ordering_case"] = ordering.case
            data["ordering_observed"] = [sorted(g) for g in ordering.observed]
            checks["modulus_ordering"] = ordering.matched
    for z in values:
        print(f"  {z.real:+.12f} {z.imag:+.12f}i")
    return data, checks, [{"re": z.real, "im": z.imag} for z in values]


def cmd_asympt(args, config: dict) -> Result:
    direction = Direction(args.r, args.s)
    est = pemantle_estimate(direction)
    point = critical_point(direction)
    residuals = point.residuals(direction)
    data = {
        "r": args.r,
        "s": args.s,
        "x": point.x,
        "y": point.y,
        "log_f": est.log_f,
        "exact_digits": len(str(est.exact)),
        "rel_error": est.rel_error,
        "tilde_e": tilde_e(Fraction(args.r, args.r + args.s)),
    }
    print(f"  相对误差: {est.rel_error:.6e}")
    scale = max(args.r, args.s)
    checks = {"critical_point": all(abs(v) < 1e-12 * scale for v in residuals)}
    return data, checks, [data]


def cmd_graph(args, config: dict) -> Result:
    g = load_graph(args.file)
    p, nper = args.alpha.numerator, args.alpha.denominator
    length = args.n if args.n is not None else 4 * nper
    table = count_balanced_paths(g, length, p, nper, args.r_list[0])
    rows = [
        {"r": row.r, "e_alpha_r": row.e_alpha_r, "tilde_e": row.tilde_e, "gap": row.gap, "irreducible": row.irreducible}
        for row in conjecture_scan(g, p, nper, args.r_list)
    ]
    data = {
        "vertices": g.vertices,
        "alpha": args.alpha,
        "n": length,
        "paths": table.total,
        "rows": rows,
    }
    checks = {"growth_nondecreasing": _monotone([row["e_alpha_r"] for row in rows])}
    if g.vertices == 1 and g.a1[0, 0] == 1 and g.a2[0, 0] == 1:
        spec = BalanceSpec(p, nper, args.r_list[0])
        reference = growth_exponent(p, nper, args.r_list[0]).e_alpha_r
        checks["reduces_to_words"] = (
            table.total == count_balanced_dp(length, spec).total
            and math.isclose(graph_growth(g, p, nper, args.r_list[0]).value, reference, rel_tol=1e-9)
        )
    print(f"  长度 {length} 的平衡路径数: {table.total}")
    return data, checks, rows


def cmd_continuity(args, config: dict) -> Result:
    report = check_continuity(args.n, args.alpha, args.alpha_prime, args.r)
    bound = jmax(args.n, args.alpha, args.alpha_prime)
    spec = BalanceSpec.from_alpha(args.alpha, args.r)
    spec_prime = BalanceSpec.from_alpha(args.alpha_prime, args.r)
    rng = np.random.default_rng(config["words"]["seed"])
    failures = []
    for w in sample_balanced(args.n, spec, rng, size=args.samples):
        try:
            core = reproject(w, args.alpha, args.alpha_prime, args.r, complete=False)
        except ReprojectionError as e:
            failures.append({"word": str(w), "step": e.step})
            continue
        if not (is_balanced(core, spec_prime) and len(core) - args.n <= bound):
            failures.append({"word": str(w), "step": None})
    data = {
        "n": args.n,
        "alpha": args.alpha,
        "alpha_prime": args.alpha_prime,
        "r": args.r,
        "jmax": bound,
        "k_n": report.k_n,
        "count_alpha": report.count_alpha,
        "count_alpha_prime": report.count_alpha_prime,
        "samples": args.samples,
        "reprojection_failures": failures,
    }
    print(f"  K_n = {report.k_n}  |B_α| = {report.count_alpha}  |B_α′| = {report.count_alpha_prime}")
    print(f"  ψ 抽样: {args.samples}  失败: {len(failures)}")
    checks = {"lower_bound": report.lower_ok, "upper_bound": report.upper_ok, "reprojection": not failures}
    row = {k: v for k, v in data.items() if k != "reprojection_failures"}
    return data, checks, [row]


def cmd_reproject(args, config: dict) -> Result:
    out = reproject(args.word, args.alpha, args.alpha_prime, args.r, complete=not args.no_complete)
    core = reproject(args.word, args.alpha, args.alpha_prime, args.r, complete=False)
    bound = jmax(len(args.word), args.alpha, args.alpha_prime)
    spec_prime = BalanceSpec.from_alpha(args.alpha_prime, args.r)
    data = {
        "word": str(args.word),
        "result": str(out),
        "inserted_zeros": len(core) - len(args.word),
        "jmax": bound,
    }
    checks = {
        "balanced": is_balanced(out, spec_prime),
        "zero_insertion": is_zero_insertion(args.word, core),
        "within_jmax": len(core) - len(args.word) <= bound,
    }
    print(f"  ψ({args.word}) = {out}")
    return data, checks, [data]


def cmd_approx(args, config: dict) -> Result:
    spectrum = config["spectrum"]
    alpha = parse_real(args.alpha_real)
    lo, hi = bracket(alpha, args.max_den)
    rows = []
    for r in args.r_list:
        est = irrational_growth(alpha, r, args.max_den, tol=spectrum["power_tol"], max_iter=spectrum["power_max_iter"])
        rows.append({
            "r": r,
            "e_lower": est.e_lower,
            "e_upper": est.e_upper,
            "lower_bound": est.lower_bound,
            "upper_bound": est.upper_bound,
            "consistent": est.consistent,
            "prefix_counts_agree": prefix_counts_agree(lo, hi, r, est.shared_prefix),
        })
        print(f"  r={r:>3}  e ∈ [{est.lower_bound:.12f}, {est.upper_bound:.12f}]")
    data = {
        "alpha": str(alpha),
        "alpha_value": float(alpha),
        "convergents": convergents(alpha, args.max_den),
        "lower": lo,
        "upper": hi,
        "log_rate": continuity_rate(lo, hi),
        "rows": rows,
    }
    checks = {
        "brackets_alpha": bool(lo < float(alpha) < hi),
        "bounds_consistent": all(row["consistent"] for row in rows),
        "prefix_counts_agree": all(row["prefix_counts_agree"] for row in rows),
    }
    return data, checks, rows


COMMANDS: Dict[str, Callable] = {
    "count": cmd_count,
    "growth": cmd_growth,
    "spectrum": cmd_spectrum,
    "galois": cmd_galois,
    "poly": cmd_poly,
    "asympt": cmd_asympt,
    "graph": cmd_graph,
    "continuity": cmd_continuity,
    "reproject": cmd_reproject,
    "approx": cmd_approx,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog=TOOL_NAME, description="平衡字、转移矩阵谱与单值群实验")
    parser.add_argument("--version", action="version", version=f"{TOOL_NAME} {__version__}")
    parser.add_argument("--config", default=None, help="配置文件路径（默认 config/settings.yaml）")
    parser.add_argument("--format", choices=("json", "csv"), default=None, help="输出格式")
    parser.add_argument("--output-dir", default=None, help="输出目录（覆盖配置）")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", help="|B_{n,α,r}| 与 |B̃_{n,α,r}|")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--alpha", type=parse_rational, required=True)
    p.add_argument("--r", type=int, required=True)

    p = sub.add_parser("growth", help="沿 r 序列计算 e_{α,r}")
    p.add_argument("--alpha", type=parse_rational, required=True)
    p.add_argument("--r-list", type=parse_int_list, default=parse_int_list("1-40"))

    p = sub.add_parser("spectrum", help="全谱、区间计数与振荡扫描")
    p.add_argument("--alpha", type=parse_rational, required=True)
    p.add_argument("--r-list", type=parse_int_list, required=True)
    p.add_argument("--lo", type=float, required=True)
    p.add_argument("--hi", type=float, required=True)
    p.add_argument("--grid", type=int, default=2000)

    p = sub.add_parser("galois", help="单值群分类")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--backend", choices=("bfs", "schreier_sims"), default="bfs")

    p = sub.add_parser("poly", help="(x+1)^n − λx^p 的根与模序")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--lambda", dest="lam", type=_parse_lambda, required=True)

    p = sub.add_parser("asympt", help="1/(1−x−y) 的鞍点渐近")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--s", type=int, required=True)

    p = sub.add_parser("graph", help="双色图上的平衡路径")
    p.add_argument("--file", required=True)
    p.add_argument("--alpha", type=parse_rational, required=True)
    p.add_argument("--r-list", "--r", dest="r_list", type=parse_int_list, required=True)
    p.add_argument("--n", type=int, default=None)

    p = sub.add_parser("continuity", help="K_n 双向估计")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--alpha", type=parse_rational, required=True)
    p.add_argument("--alpha-prime", type=parse_rational, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--samples", type=int, default=0, help="抽样做 ψ 的平衡字个数")

    p = sub.add_parser("reproject", help="对一个平衡字作 ψ 重投影")
    p.add_argument("--word", type=parse_word, required=True)
    p.add_argument("--alpha", type=parse_rational, required=True)
    p.add_argument("--alpha-prime", type=parse_rational, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--no-complete", action="store_true", help="不补全到 n + jmax")

    p = sub.add_parser("approx", help="无理 α：用相邻渐近分数夹住 e_{α,r}")
    p.add_argument("--alpha-real", required=True, help="sympy 表达式，如 1/sqrt(2)")
    p.add_argument("--r-list", type=parse_int_list, required=True)
    p.add_argument("--max-den", type=int, default=99, help="渐近分数分母上限")
    return parser


def _run_config(args, config: dict) -> dict:
    params = {
        k: v
        for k, v in sorted(vars(args).items())
        if k not in ("config", "format", "output_dir", "command")
    }
    return {
        "command": args.command,
        "params": params,
        "settings": {k: config[k] for k in ("spectrum", "roots", "tracking", "words")},
    }


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = load_config(args.config)
    except (OSError, ValueError) as e:
        print(f"[错误] 配置加载失败：{e}")
        return 2
    if args.output_dir:
        config["report"]["output_dir"] = args.output_dir
    setup_logging(config)
    fmt = args.format or config["report"]["format"]

    print(f"[开始] {args.command}")
    try:
        data, checks, rows = COMMANDS[args.command](args, config)
    except (ValueError, RuntimeError) as e:
        logger.debug("命令失败 | 命令: %s", args.command, exc_info=True)
        print(f"[错误] {e}")
        return 2

    writer = ReportWriter(config["report"]["output_dir"], tool=TOOL_NAME, version=__version__)
    writer.send(args.command, _run_config(args, config), data, checks, fmt=fmt, rows=rows)

    failed = [name for name, ok in checks.items() if not ok]
    if failed:
        print(f"[失败] 未通过的检查：{', '.join(failed)}")
        return 1
    print("[完成] 所有检查通过")
    return 0


if __name__ == "__main__":
    sys.exit(main())
