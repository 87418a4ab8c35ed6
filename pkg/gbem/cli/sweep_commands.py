"""
扫描命令 Mixin — sudden-death、blackhole、figures
"""
import argparse
import logging
import math

from gbem.blackhole import AccessibleCase
from gbem.experiments import blackhole_rows, render_csv, sudden_death_rows, write_figures
from gbem.hilbert import PureState
from gbem.statefile import load_state_arg
from gbem.utils import parse_angle

logger = logging.getLogger(__name__)


class SweepCommandsMixin:
    """CSV 扫描子命令，需与 GbemCLI 混入使用（依赖 self.emit / self.write_output）。"""

    def add_sweep_commands(self, subparsers) -> None:
        death = subparsers.add_parser("sudden-death", help="GHZ₄(α) 在衰减信道下的 GMC 与 GBC 下界")
        death.add_argument("--alpha", type=parse_angle, default=math.pi / 4, help="弧度，可写 pi/4")
        death.add_argument("--grid", type=int, default=None, help="p 网格点数，默认取配置 dynamics.grid_points")
        death.add_argument("--out", default=None, help="CSV 输出路径（默认标准输出）")
        death.set_defaults(handler=self.cmd_sudden_death)

        hole = subparsers.add_parser("blackhole", help="可观测模的 GBC 下界随 Hawking 温度变化")
        hole.add_argument("--case", required=True, choices=[c.value for c in AccessibleCase])
        hole.add_argument("--theta", type=parse_angle, default=None)
        hole.add_argument("--omega", type=float, default=None)
        hole.add_argument("--tmin", type=float, default=None)
        hole.add_argument("--tmax", type=float, default=None)
        hole.add_argument("--points", type=int, default=None)
        hole.add_argument("--observable", default=None, help="覆盖默认观测态（文件或命名态）")
        hole.add_argument("--out", default=None)
        hole.set_defaults(handler=self.cmd_blackhole)

        figures = subparsers.add_parser("figures", aliases=["paper-figures"],
                                        help="写出 fig3.csv、fig5.csv、example2_thresholds.csv")
        figures.add_argument("--outdir", default=".")
        figures.set_defaults(handler=self.cmd_figures)

    def cmd_sudden_death(self, args: argparse.Namespace) -> int:
        if not 0.0 < args.alpha <= math.pi / 2:
            raise ValueError(f"alpha 必须位于 (0, π/2]，当前 {args.alpha!r}")
        logger.info("sudden-death: alpha=%.6g, grid=%s", args.alpha, args.grid)
        header, rows, footer = sudden_death_rows(args.alpha, args.grid)
        self.write_output(render_csv(header, rows, footer), args.out)
        return 0

    def cmd_blackhole(self, args: argparse.Namespace) -> int:
        observable = None
        if args.observable:
            observable = load_state_arg(args.observable)
            if not isinstance(observable, PureState):
                raise ValueError(f"观测态必须是纯态: {args.observable!r}")
        logger.info("blackhole: case=%s", args.case)
        header, rows = blackhole_rows(args.case, args.theta, args.omega, args.tmin, args.tmax,
                                      args.points, observable)
        self.write_output(render_csv(header, rows), args.out)
        return 0

    def cmd_figures(self, args: argparse.Namespace) -> int:
        for path in write_figures(args.outdir):
            self.emit(path)
        return 0
