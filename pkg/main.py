#!/usr/bin/env python3
"""
Disordered Quantum Walk Metrology - 主启动脚本
"""

import argparse
import importlib
import os
import subprocess
import sys


def setup_paths():
    """设置Python路径"""
    root = os.path.dirname(os.path.abspath(__file__))
    if root not in sys.path:
        sys.path.insert(0, root)
    return root


def run_tests(include_slow: bool = False):
    """运行测试"""
    print("🧪 运行测试套件...")
    root = setup_paths()
    try:
        import pytest  # noqa: F401
    except ImportError:
        print("❌ pytest 未安装，请运行: pip install -e \".[dev]\"")
        sys.exit(1)

    command = [sys.executable, "-m", "pytest", "tests/", "-v"]
    if not include_slow:
        command += ["-m", "not slow"]
    result = subprocess.run(command, cwd=root)
    sys.exit(result.returncode)


def show_status():
    """显示项目状态"""
    print("📊 qwalk 状态")
    print("=" * 50)
    setup_paths()
    print(f"🐍 Python解释器: {sys.executable}")

    print("\n📦 依赖检查:")
    for dep in ["numpy", "scipy", "joblib", "tqdm", "matplotlib", "pydantic", "dotenv"]:
        try:
            module = importlib.import_module(dep)
            print(f"   ✅ {dep} {getattr(module, '__version__', '')}")
        except ImportError:
            print(f"   ❌ {dep}")

    from qwalk.presets import available_presets
    print("\n🖼  图像预设:")
    print(f"   {', '.join(available_presets())}")


def main():
    """主函数"""
    parser = argparse.ArgumentParser(
        description="Disordered Quantum Walk Metrology",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
示例:
  python main.py simulate --config run.json   # 运行一个实验 (参数同 qwalk)
  python main.py reproduce fig2a              # 复现图像
  python main.py --test                       # 运行快速测试
  python main.py --test --slow                # 包含系综验收测试
  python main.py --status                     # 显示项目状态
        """,
    )
    parser.add_argument("--test", action="store_true", help="运行测试套件")
    parser.add_argument("--slow", action="store_true", help="测试时包含 slow 标记的用例")
    parser.add_argument("--status", action="store_true", help="显示项目状态")

    args, rest = parser.parse_known_args()
    if args.test:
        run_tests(args.slow)
    elif args.status:
        show_status()
    else:
        setup_paths()
        from qwalk.cli import main as cli_main
        sys.exit(cli_main(rest))


if __name__ == "__main__":
    main()
