import sys
from pathlib import Path

# 与 main.py 一样从仓库根目录导入各个包
sys.path.insert(0, str(Path(__file__).resolve().parent.parent))
