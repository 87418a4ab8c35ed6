"""
命令行主入口 — GbemCLI 主类，混入所有命令 Mixin，构建 argparse 解析器
"""
import argparse
import logging
import os
import sys
from typing import Optional, Sequence, TextIO

from gbem.cli.measure_commands import MeasureCommandsMixin
from gbem.cli.sweep_commands import SweepCommandsMixin

_LOG_LEVELS = (logging.WARNING, logging.INFO, logging.DEBUG)


class GbemCLI(
    MeasureCommandsMixin,
    SweepCommandsMixin,
):
    """gbem 命令行。

    通过 Mixin 组合各子命令：
    - MeasureCommandsMixin: measure、bound
    - SweepCommandsMixin: sudden-death、blackhole、figures

    所有领域错误（ValueError / TypeError / OSError）统一打印为 "❌ <消息>"，退出码 2。
    """

    def __init__(self, stdout: Optional[TextIO] = None, stderr: Optional[TextIO] = None):
        self.out = stdout or sys.stdout
        self.err = stderr or sys.stderr
        self.parser = self.build_parser()

    def build_parser(self) -> argparse.ArgumentParser:
        parser = argparse.ArgumentParser(
            prog="gbem",
            description="几何平均型真多体纠缠度量、保真度下界与动力学扫描",
        )
        parser.add_argument("-v", "--verbose", action="count", default=0, help="-v 输出 INFO，-vv 输出 DEBUG")
        subparsers = parser.add_subparsers(dest="command", required=True)
        self.add_measure_commands(subparsers)
        self.add_sweep_commands(subparsers)
        return parser

    # ------------------------------------------------------------------ #
    #  输出                                                                #
    # ------------------------------------------------------------------ #

    def emit(self, line: str) -> None:
        self.out.write(line + "\n")

    def write_output(self, text: str, path: Optional[str]) -> None:
        """path 为空时写到标准输出，否则写文件（'\\n' 换行）。"""
        if not path:
            self.out.write(text)
            return
        directory = os.path.dirname(os.path.abspath(path))
        os.makedirs(directory, exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="") as f:
            f.write(text)
        self.emit(path)

    # ------------------------------------------------------------------ #
    #  运行                                                                #
    # ------------------------------------------------------------------ #

    def run(self, argv: Optional[Sequence[str]] = None) -> int:
        args = self.parser.parse_args(argv)
        level = _LOG_LEVELS[min(args.verbose, len(_LOG_LEVELS) - 1)]
        logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s",
                            stream=self.err, force=True)
        try:
            return args.handler(args)
        except (ValueError, TypeError, OSError) as e:
            self.err.write(f"❌ {e}\n")
            return 2


def main(argv: Optional[Sequence[str]] = None) -> int:
    """主函数：解析参数并执行子命令，返回退出码。"""
    return GbemCLI().run(argv)


if __name__ == "__main__":
    sys.exit(main())
