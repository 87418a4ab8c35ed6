"""
度量命令 Mixin — measure、bound
"""
import argparse
from typing import List

from gbem.bounds import BoundReport, Convention, best_bound
from gbem.hilbert import PureState
from gbem.measures import MeasureKind, gbem, is_biseparable_pure
from gbem.statefile import load_state_arg
from gbem.utils import format_table_float

KIND_CHOICES = [k.value for k in MeasureKind] + ["all"]


def _kinds(value: str) -> List[MeasureKind]:
    return list(MeasureKind) if value == "all" else [MeasureKind.parse(value)]


class MeasureCommandsMixin:
    """measure / bound 子命令，需与 GbemCLI 混入使用（依赖 self.out）。"""

    def add_measure_commands(self, subparsers) -> None:
        measure = subparsers.add_parser("measure", help="纯态的精确 GBEM 值与逐二分表")
        measure.add_argument("state", help="态文件路径或命名态（如 ghz:3、w:3）")
        measure.add_argument("--kind", default="concurrence", choices=KIND_CHOICES)
        measure.add_argument("--eps", type=float, default=None, help="Schmidt 秩容差，默认取配置 numerics.rank_eps")
        measure.set_defaults(handler=self.cmd_measure)

        bound = subparsers.add_parser("bound", help="基于保真度的 GBEM 下界与逐二分证书")
        bound.add_argument("state", help="目标态（纯态或密度矩阵）文件路径或命名态")
        bound.add_argument("--observable", action="append", required=True,
                           help="观测态文件或命名态；可重复给出，取最大下界")
        bound.add_argument("--kind", default="concurrence", choices=KIND_CHOICES)
        bound.add_argument("--convention", default=None, choices=[c.value for c in Convention])
        bound.add_argument("--eps", type=float, default=None)
        bound.set_defaults(handler=self.cmd_bound)

    # ------------------------------------------------------------------ #
    #  measure                                                             #
    # ------------------------------------------------------------------ #

    def cmd_measure(self, args: argparse.Namespace) -> int:
        state = load_state_arg(args.state)
        for kind in _kinds(args.kind):
            result = gbem(state, kind, args.eps)
            self.emit(f"kind: {kind.short_name} ({kind.value})")
            self.emit(f"value: {format_table_float(result.value)}")
            self.emit("bipartition,value")
            for gamma, value in result.per_bipartition:
                self.emit(f"{gamma.label},{format_table_float(value)}")
        biseparable, witness = is_biseparable_pure(state, args.eps)
        if biseparable:
            self.emit(f"biseparable: {witness.label}")
        return 0

    # ------------------------------------------------------------------ #
    #  bound                                                               #
    # ------------------------------------------------------------------ #

    def cmd_bound(self, args: argparse.Namespace) -> int:
        state = load_state_arg(args.state)
        observables = [load_state_arg(o) for o in args.observable]
        for index, observable in enumerate(observables):
            if not isinstance(observable, PureState):
                raise ValueError(f"观测态必须是纯态: {args.observable[index]!r}")
        for kind in _kinds(args.kind):
            report = best_bound(state, observables, kind, args.convention, args.eps)
            self._print_report(report, len(observables))
        return 0

    def _print_report(self, report: BoundReport, candidates: int) -> None:
        f = format_table_float
        self.emit(f"kind: {report.kind.short_name} ({report.kind.value})")
        self.emit(f"convention: {report.convention.value}")
        if candidates > 1:
            self.emit(f"observable: #{report.candidate_index}")
        self.emit(f"fidelity: {f(report.fidelity)}")
        self.emit(f"lambda_caps: {f(report.lambda_caps[0])},{f(report.lambda_caps[1])}")
        self.emit(f"bound: {f(report.bound_value)}")
        self.emit(f"refined_bound: {f(report.refined_value)}")
        self.emit("bipartition,lambda0,rank,d_min,certified,lower_bound")
        for cert in report.per_bipartition_certificates:
            self.emit(",".join([
                cert.gamma.label, f(cert.lambda0), str(cert.rank), str(cert.d_min),
                str(cert.certified).lower(), f(cert.lower_bounds[report.kind]),
            ]))
