"""Command-line front end.

Four subcommands, all emitting CSV so results pipe cleanly into other tools:

* ``scenario`` runs a bundled verification scenario and reports each
  assertion as a row.
* ``run`` executes one network history from a config file and lists the
  surviving branches.
* ``verify`` drives a network with every classical input and checks it
  against a truth-table file.
* ``average`` integrates a network's output over environment wave packets
  and tabulates the mixed-state diagnostics per time.

Exit status is 0 when everything passed, 1 when an assertion failed, and 2
for configuration or I/O problems.
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass, field

import numpy as np

from . import analysis
from .boolfn import parse_truth_table
from .environment import (
    DEFAULT_GRID_POINTS,
    QuadratureGrid,
    WavePacket,
    averaged_density,
    parse_packet,
    purity,
)
from .errors import ParseError
from .gates import GateParams, fixed_gate
from .network import (
    BooleanStep,
    NetworkSpec,
    UnitaryStep,
    branch_amplitudes,
    run_history,
    verify_truth_table,
)
from .qstate import von_neumann_entropy

SCENARIOS = (
    "table1",
    "table2",
    "boolean-mn",
    "xor",
    "hadamard-variant",
    "complementarity",
    "averaged-dynamics",
)

_RUN_THRESHOLD = 1e-12


def parse_angle(token: str) -> float:
    """One angle in radians; a trailing ``pi`` multiplies, e.g. ``0.5pi``."""
    tok = token.strip().lower()
    if not tok:
        raise ParseError("empty angle token")
    if tok.endswith("pi"):
        head = tok[:-2].strip()
        if head in ("", "+"):
            factor = 1.0
        elif head == "-":
            factor = -1.0
        else:
            try:
                factor = float(head)
            except ValueError:
                raise ParseError(f"bad angle token {token!r}") from None
        return factor * math.pi
    try:
        return float(tok)
    except ValueError:
        raise ParseError(f"bad angle token {token!r}") from None


def parse_phi(text: str) -> GateParams:
    """Four comma-separated angles -> GateParams."""
    parts = text.split(",")
    if len(parts) != 4:
        raise ParseError(f"--phi needs 4 comma-separated angles, got {len(parts)}")
    return GateParams(*(parse_angle(p) for p in parts))


def parse_float_list(text: str) -> tuple[float, ...]:
    """Comma-separated reals, e.g. ``0,0.5,3.7``."""
    parts = [p.strip() for p in text.split(",") if p.strip()]
    if not parts:
        raise ParseError("empty number list")
    try:
        return tuple(float(p) for p in parts)
    except ValueError:
        raise ParseError(f"bad number list {text!r}") from None


def _int_list(value: str, lineno: int) -> tuple[int, ...]:
    inner = value.strip()
    if inner.startswith("[") and inner.endswith("]"):
        inner = inner[1:-1]
    parts = [p.strip() for p in inner.split(",") if p.strip()]
    if not parts:
        raise ParseError(f"empty integer list {value!r}", line=lineno)
    try:
        return tuple(int(p) for p in parts)
    except ValueError:
        raise ParseError(f"bad integer list {value!r}", line=lineno) from None


def _split_kv(line: str, lineno: int) -> tuple[str, str]:
    cut = min((i for i in (line.find("="), line.find(":")) if i >= 0), default=-1)
    if cut < 0:
        raise ParseError(f"expected 'key = value', got {line!r}", line=lineno)
    return line[:cut].strip().lower(), line[cut + 1 :].strip()


def _build_step(fields: dict, lineno: int):
    kind = fields.get("kind")
    if kind is None:
        raise ParseError("step block is missing 'kind'", line=lineno)
    kind = kind.strip().lower()
    if kind == "boolean":
        for key in ("controls", "targets", "table"):
            if key not in fields:
                raise ParseError(f"boolean step is missing {key!r}", line=lineno)
        controls = _int_list(fields["controls"], lineno)
        targets = _int_list(fields["targets"], lineno)
        entries = [e.strip() for e in fields["table"].split(",") if e.strip()]
        try:
            g = parse_truth_table("\n".join(entries))
        except ParseError as exc:
            raise ParseError(f"in inline table: {exc}", line=lineno) from None
        try:
            return BooleanStep(g, controls, targets)
        except ValueError as exc:
            raise ParseError(str(exc), line=lineno) from None
    if kind == "post_unitary":
        for key in ("targets", "gate"):
            if key not in fields:
                raise ParseError(f"post_unitary step is missing {key!r}", line=lineno)
        targets = _int_list(fields["targets"], lineno)
        try:
            gate = fixed_gate(fields["gate"])
            return UnitaryStep(tuple(gate for _ in targets), targets)
        except ValueError as exc:
            raise ParseError(str(exc), line=lineno) from None
    raise ParseError(
        f"unknown step kind {kind!r}; expected 'boolean' or 'post_unitary'",
        line=lineno,
    )


def parse_network_config(text: str) -> tuple[NetworkSpec, tuple[int, ...]]:
    """Parse a network config file into (NetworkSpec, input neuron indices).

    Format::

        layers = [1, 2, 1]
        inputs = [1]          # optional; defaults to the first layer

        [step]
        kind = boolean
        controls = [1]
        targets = [2, 3]
        table = 0 -> 01, 1 -> 10

        [step]
        kind = post_unitary
        targets = [4]
        gate = hadamard
    """
    if not isinstance(text, str):
        raise ParseError(f"expected text, got {type(text).__name__}")
    layers: tuple[int, ...] | None = None
    inputs: tuple[int, ...] | None = None
    steps = []
    current: dict | None = None
    current_line = 0

    def flush():
        nonlocal current
        if current is not None:
            steps.append(_build_step(current, current_line))
            current = None

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.lower() == "[step]":
            flush()
            current = {}
            current_line = lineno
            continue
        key, value = _split_kv(line, lineno)
        if current is not None:
            if key in current:
                raise ParseError(f"duplicate key {key!r} in step", line=lineno)
            current[key] = value
            continue
        if key == "layers":
            layers = _int_list(value, lineno)
        elif key == "inputs":
            inputs = _int_list(value, lineno)
        else:
            raise ParseError(f"unknown top-level key {key!r}", line=lineno)
    flush()
    if layers is None:
        raise ParseError("config is missing 'layers'")
    try:
        net = NetworkSpec(layers, tuple(steps))
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    if inputs is None:
        inputs = tuple(range(1, net.layers[0] + 1))
    for q in inputs:
        if not 1 <= q <= net.n_neurons:
            raise ParseError(f"input neuron {q} out of range 1..{net.n_neurons}")
    if len(set(inputs)) != len(inputs):
        raise ParseError(f"duplicate input neurons: {list(inputs)}")
    return net, inputs


@dataclass
class RunConfig:
    """Everything one invocation needs, decoupled from argparse."""

    command: str
    scenario: str | None = None
    net_path: str | None = None
    fn_path: str | None = None
    packet_paths: tuple[str, ...] = ()
    phis: tuple[GateParams, ...] = ()
    seed: int = analysis.DEFAULT_SEED
    samples: int = 100
    grid_points: int = DEFAULT_GRID_POINTS
    n_max: int | None = None
    times: tuple[float, ...] = (0.0,)
    out_path: str | None = None


def _read_text(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise OSError(f"cannot read {path}: {exc.strerror or exc}") from None


def _emit(text: str, out_path: str | None) -> None:
    if out_path is None:
        sys.stdout.write(text)
        return
    try:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(f"cannot write {out_path}: {exc.strerror or exc}") from None


def _csv_rows(header: list[str], rows: list[list[str]]) -> str:
    import csv
    import io

    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _scenario_report(cfg: RunConfig) -> analysis.ScenarioReport:
    phi = cfg.phis[0] if cfg.phis else None
    name = cfg.scenario
    if name == "table1":
        return analysis.table1_check()
    if name == "table2":
        return analysis.table2_check(phi)
    if name == "boolean-mn":
        return analysis.boolean_mn_check(seed=cfg.seed, samples=cfg.samples)
    if name == "xor":
        return analysis.xor_reflexivity_check(samples=cfg.samples, seed=cfg.seed)
    if name == "hadamard-variant":
        return analysis.hadamard_variant_check(phi)
    if name == "complementarity":
        return analysis.complementarity_check(phi)
    if name == "averaged-dynamics":
        return analysis.averaged_dynamics_check(
            t_values=cfg.times, grid_points=cfg.grid_points
        )
    raise ValueError(f"unknown scenario {name!r}; choose from {list(SCENARIOS)}")


def run_command(cfg: RunConfig) -> int:
    """Execute one parsed invocation; returns the process exit status."""
    if cfg.command == "scenario":
        report = _scenario_report(cfg)
        _emit(report.to_csv(), cfg.out_path)
        return 0 if report.passed else 1

    if cfg.command == "run":
        if cfg.net_path is None:
            raise ValueError("run needs --net")
        net, inputs = parse_network_config(_read_text(cfg.net_path))
        if len(cfg.phis) != len(inputs):
            raise ValueError(
                f"need {len(inputs)} --phi values for input neurons {list(inputs)}, "
                f"got {len(cfg.phis)}"
            )
        state = run_history(net, cfg.phis, inputs)
        rows = [
            [bits, f"{amp.real:.12g}", f"{amp.imag:.12g}"]
            for bits, amp in branch_amplitudes(state, _RUN_THRESHOLD)
        ]
        _emit(_csv_rows(["branch", "re", "im"], rows), cfg.out_path)
        return 0

    if cfg.command == "verify":
        if cfg.net_path is None or cfg.fn_path is None:
            raise ValueError("verify needs --net and --fn")
        net, _ = parse_network_config(_read_text(cfg.net_path))
        g = parse_truth_table(_read_text(cfg.fn_path))
        report = verify_truth_table(net, g)
        rows = [
            [
                c.input_bits,
                c.expected_bits,
                f"{c.probability:.12g}",
                "true" if c.passed else "false",
            ]
            for c in report.cases
        ]
        _emit(_csv_rows(["input", "expected_output", "probability", "pass"], rows), cfg.out_path)
        return 0 if report.passed else 1

    if cfg.command == "average":
        if cfg.net_path is None:
            raise ValueError("average needs --net")
        net, inputs = parse_network_config(_read_text(cfg.net_path))
        if cfg.packet_paths:
            packets = [parse_packet(_read_text(p)) for p in cfg.packet_paths]
        else:
            packets = [WavePacket.uniform() for _ in inputs]
        if cfg.n_max is not None:
            packets = [p.truncate(cfg.n_max) for p in packets]
        if len(packets) != len(inputs):
            raise ValueError(
                f"need {len(inputs)} packets for input neurons {list(inputs)}, "
                f"got {len(packets)}"
            )
        grid = QuadratureGrid(cfg.grid_points)
        n = net.n_neurons
        header = ["t", "trace", "purity", "entropy_bits"] + [
            f"p_{format(k, f'0{n}b')}" for k in range(2**n)
        ]
        rows = []
        for t in cfg.times:
            rho = averaged_density(net, packets, t=t, grid=grid, input_neurons=inputs)
            rows.append(
                [f"{t:.12g}", f"{np.trace(rho.entries).real:.12g}",
                 f"{purity(rho):.12g}", f"{von_neumann_entropy(rho):.12g}"]
                + [f"{p:.12g}" for p in rho.probabilities()]
            )
        _emit(_csv_rows(header, rows), cfg.out_path)
        return 0

    raise ValueError(f"unknown command {cfg.command!r}")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qfnn",
        description="Simulate quantum feedforward neural networks and their "
        "environment-averaged statistics; all output is CSV.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, *, phi=False, seed=False, grid=False, times=False):
        if phi:
            p.add_argument(
                "--phi",
                action="append",
                type=parse_phi,
                default=None,
                metavar="A,B,C,D",
                help="input angles in radians; 'pi' tokens work, e.g. 0,0,0,0.5pi; "
                "repeat the flag for several input neurons",
            )
        if seed:
            p.add_argument("--seed", type=int, default=analysis.DEFAULT_SEED)
            p.add_argument("--samples", type=int, default=100)
        if grid:
            p.add_argument("--grid", type=int, default=DEFAULT_GRID_POINTS,
                           metavar="P", help="quadrature points per angle axis")
        if times:
            p.add_argument("--t", type=parse_float_list, default=(0.0,),
                           metavar="LIST", help="comma-separated times, e.g. 0,0.5,3.7")
        p.add_argument("--out", default=None, metavar="PATH",
                       help="write CSV here instead of stdout")

    p_scen = sub.add_parser(
        "scenario", help="run a bundled verification scenario"
    )
    p_scen.add_argument("name", choices=SCENARIOS)
    add_common(p_scen, phi=True, seed=True, grid=True, times=True)

    p_run = sub.add_parser("run", help="run one network history from a config file")
    p_run.add_argument("--net", required=True, metavar="PATH")
    add_common(p_run, phi=True)

    p_ver = sub.add_parser("verify", help="check a network against a truth-table file")
    p_ver.add_argument("--net", required=True, metavar="PATH")
    p_ver.add_argument("--fn", required=True, metavar="PATH")
    add_common(p_ver)

    p_avg = sub.add_parser(
        "average", help="average a network over environment wave packets"
    )
    p_avg.add_argument("--net", required=True, metavar="PATH")
    p_avg.add_argument(
        "--packet", action="append", default=None, metavar="PATH",
        help="packet file per input neuron; defaults to the uniform packet",
    )
    p_avg.add_argument("--nmax", type=int, default=None, metavar="N",
                       help="drop packet modes with any |component| above N")
    add_common(p_avg, grid=True, times=True)
    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    times = getattr(args, "t", (0.0,))
    if isinstance(times, (int, float)):
        times = (float(times),)
    return RunConfig(
        command=args.command,
        scenario=getattr(args, "name", None),
        net_path=getattr(args, "net", None),
        fn_path=getattr(args, "fn", None),
        packet_paths=tuple(getattr(args, "packet", None) or ()),
        phis=tuple(getattr(args, "phi", None) or ()),
        seed=getattr(args, "seed", analysis.DEFAULT_SEED),
        samples=getattr(args, "samples", 100),
        grid_points=getattr(args, "grid", DEFAULT_GRID_POINTS),
        n_max=getattr(args, "nmax", None),
        times=tuple(times),
        out_path=getattr(args, "out", None),
    )


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return run_command(_config_from_args(args))
    except (ParseError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
