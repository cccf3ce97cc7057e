"""Environment register on the four-torus driving the gate angles.

The four angles of a single-neuron gate live on a flat four-torus.  The free
environment there has plane-wave eigenfunctions indexed by integer
four-vectors n, with energies |n|^2 and the stationary normalization
1/(4 pi^2).  A wave packet is a normalized superposition of finitely many
modes; evolving it just rotates each coefficient by its eigenphase.

Averaging a network's output over the packet's angle distribution produces a
mixed state: the quadrature below integrates the projector onto the network
output over the torus, weighted by |Psi(phi, t)|^2.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .boolfn import compile_synaptic, synaptic_permutation
from .errors import ParseError
from .gates import GateParams
from .network import BooleanStep, NetworkSpec, Step, UnitaryStep
from .qstate import DensityMatrix

ModeIndex = tuple[int, int, int, int]

DEFAULT_TRUNCATION = 3
DEFAULT_GRID_POINTS = 16

_TWO_PI = 2.0 * math.pi
_FOUR_PI_SQ = 4.0 * math.pi**2
_NORM_ATOL = 1e-12
_RENORM_WARN = 1e-6


def _check_mode(mode) -> ModeIndex:
    try:
        parts = tuple(mode)
    except TypeError:
        raise ValueError(f"mode index must be a 4-tuple of integers, got {mode!r}")
    if len(parts) != 4:
        raise ValueError(f"mode index needs 4 components, got {len(parts)}")
    out = []
    for k in parts:
        if isinstance(k, bool) or not isinstance(k, (int, np.integer)):
            raise ValueError(f"mode component {k!r} is not an integer")
        out.append(int(k))
    return tuple(out)


def _angles_of(phi) -> np.ndarray:
    if isinstance(phi, GateParams):
        return np.array(phi.as_tuple(), dtype=np.float64)
    arr = np.asarray(phi, dtype=np.float64)
    if arr.shape != (4,):
        raise ValueError(f"expected four angles or GateParams, got {phi!r}")
    return arr


def energy(mode) -> int:
    """Eigenenergy of a torus mode: the squared length of its integer vector."""
    n = _check_mode(mode)
    return n[0] ** 2 + n[1] ** 2 + n[2] ** 2 + n[3] ** 2


def eigenfunction(mode, phi) -> complex:
    """Plane-wave eigenfunction exp(i n.phi) / (4 pi^2) at a point of the torus.

    ``phi`` may be a ``GateParams`` or any length-4 angle sequence.
    """
    n = _check_mode(mode)
    angles = _angles_of(phi)
    return complex(np.exp(1j * float(np.dot(n, angles))) / _FOUR_PI_SQ)


class WavePacket:
    """Normalized superposition of finitely many torus modes.

    ``coefficients`` maps integer 4-tuples to complex amplitudes with
    sum |A|^2 = 1 within 1e-12.  ``truncation`` bounds the largest |component|
    and is inferred from the modes when not given.  Packets are immutable;
    time evolution multiplies coefficients by eigenphases on the fly and
    never mutates the stored values.
    """

    __slots__ = ("_modes", "_values", "_energies", "_truncation")

    def __init__(self, coefficients: Mapping[ModeIndex, complex], truncation: int | None = None):
        items = []
        for mode, value in dict(coefficients).items():
            mode = _check_mode(mode)
            value = complex(value)
            if not (math.isfinite(value.real) and math.isfinite(value.imag)):
                raise ValueError(f"coefficient for mode {mode} must be finite")
            items.append((mode, value))
        if not items:
            raise ValueError("wave packet needs at least one mode")
        if len({mode for mode, _ in items}) != len(items):
            raise ValueError("duplicate modes in coefficient mapping")
        items.sort(key=lambda kv: kv[0])
        norm_sq = sum(abs(v) ** 2 for _, v in items)
        if abs(norm_sq - 1.0) > _NORM_ATOL:
            raise ValueError(
                f"coefficients are not normalized: sum |A|^2 = {norm_sq!r}"
            )
        observed = max(max(abs(k) for k in mode) for mode, _ in items)
        if truncation is None:
            truncation = observed
        else:
            truncation = int(truncation)
            if truncation < observed:
                raise ValueError(
                    f"mode components reach {observed}, beyond truncation {truncation}"
                )
        self._modes = np.array([mode for mode, _ in items], dtype=np.int64)
        self._values = np.array([v for _, v in items], dtype=np.complex128)
        self._energies = np.array(
            [energy(mode) for mode, _ in items], dtype=np.int64
        )
        self._modes.setflags(write=False)
        self._values.setflags(write=False)
        self._energies.setflags(write=False)
        self._truncation = truncation

    @property
    def truncation(self) -> int:
        return self._truncation

    @property
    def modes(self) -> list[ModeIndex]:
        """Mode tuples in canonical (sorted) order."""
        return [tuple(int(k) for k in row) for row in self._modes]

    @property
    def coefficients(self) -> dict[ModeIndex, complex]:
        return {mode: complex(v) for mode, v in zip(self.modes, self._values)}

    def norm_sq(self) -> float:
        """Sum of |A|^2 over the stored coefficients."""
        return float(np.vdot(self._values, self._values).real)

    def evolved_coefficients(self, t: float) -> np.ndarray:
        """Coefficients at time ``t``: A_n exp(-i |n|^2 t), aligned with ``modes``."""
        return self._values * np.exp(-1j * self._energies * float(t))

    def truncate(self, n_max: int) -> "WavePacket":
        """Drop modes with any |component| above ``n_max`` and renormalize."""
        n_max = int(n_max)
        if n_max < 0:
            raise ValueError(f"truncation must be non-negative, got {n_max}")
        kept = {
            mode: value
            for mode, value in self.coefficients.items()
            if max(abs(k) for k in mode) <= n_max
        }
        if not kept:
            raise ValueError(f"no modes survive truncation to {n_max}")
        norm = math.sqrt(sum(abs(v) ** 2 for v in kept.values()))
        return WavePacket({m: v / norm for m, v in kept.items()}, truncation=n_max)

    @classmethod
    def uniform(cls) -> "WavePacket":
        """The zero-mode packet: constant amplitude over the whole torus."""
        return cls({(0, 0, 0, 0): 1.0}, truncation=0)

    @classmethod
    def single_mode(cls, mode) -> "WavePacket":
        """A packet concentrated on one eigenmode (a stationary distribution)."""
        return cls({_check_mode(mode): 1.0})

    def __repr__(self) -> str:
        return (
            f"WavePacket(modes={len(self._values)}, truncation={self._truncation})"
        )


def evaluate_packet(packet: WavePacket, phi, t: float = 0.0) -> complex:
    """Packet value Psi(phi, t) at one point of the torus."""
    angles = _angles_of(phi)
    phases = packet._modes @ angles - packet._energies * float(t)
    return complex(np.sum(packet._values * np.exp(1j * phases)) / _FOUR_PI_SQ)


@dataclass(frozen=True)
class QuadratureGrid:
    """Uniform P^4 grid on the torus with equal weights (2 pi / P)^4.

    Nodes sit at cell midpoints 2 pi (j + 1/2) / P.  For 2 pi periodic
    integrands every equally spaced offset sums identically; the midpoint
    offset also makes the node set symmetric under phi -> 2 pi - phi with no
    fixed node, which cancels the odd part of the quarter-angle gate weights
    exactly.  Vertex-placed nodes would bias those weights by O(1/P).
    """

    points_per_axis: int = DEFAULT_GRID_POINTS

    def __post_init__(self):
        p = int(self.points_per_axis)
        if p < 2:
            raise ValueError(f"grid needs at least 2 points per axis, got {p}")
        object.__setattr__(self, "points_per_axis", p)

    @property
    def spacing(self) -> float:
        return _TWO_PI / self.points_per_axis

    @property
    def weight(self) -> float:
        """Quadrature weight of one node in four dimensions."""
        return self.spacing**4

    def axis_nodes(self) -> np.ndarray:
        """The P midpoint nodes of one axis."""
        return (np.arange(self.points_per_axis) + 0.5) * self.spacing


def packet_grid_values(packet: WavePacket, grid: QuadratureGrid, t: float = 0.0) -> np.ndarray:
    """Psi(phi, t) on the full grid, shape (P, P, P, P), axis k = angle k."""
    nodes = grid.axis_nodes()
    p = grid.points_per_axis
    out = np.zeros((p, p, p, p), dtype=np.complex128)
    coeffs = packet.evolved_coefficients(t) / _FOUR_PI_SQ
    for row, c in zip(packet._modes, coeffs):
        axes = [np.exp(1j * int(k) * nodes) for k in row]
        out += c * np.einsum("a,b,c,d->abcd", *axes)
    return out


def _averaged_qubit_density(packet: WavePacket, grid: QuadratureGrid, t: float) -> np.ndarray:
    """Quadrature of the excited-neuron projector against |Psi|^2, one neuron.

    The gate response of a quiescent neuron is the pure state
    (e^{i(phi0+phi1)} cos(phi3/4), -e^{i(phi0-phi2)} sin(phi3/4)); averaging
    its projector needs only three reductions of the weight grid.  Trace is
    left at the raw quadrature mass; the caller renormalizes once.
    """
    nodes = grid.axis_nodes()
    w = grid.weight * np.abs(packet_grid_values(packet, grid, t)) ** 2
    c = np.cos(nodes / 4.0)
    s = np.sin(nodes / 4.0)
    w3 = w.sum(axis=(0, 1, 2))
    r00 = float((w3 * c * c).sum())
    r11 = float((w3 * s * s).sum())
    phase = np.exp(1j * nodes)
    r01 = complex(-np.einsum("abcd,b,c,d->", w, phase, phase, c * s))
    return np.array([[r00, r01], [np.conj(r01), r11]], dtype=np.complex128)


def _conjugate_single(rho: np.ndarray, u: np.ndarray, qubit: int, n_qubits: int) -> np.ndarray:
    """rho -> U rho U^dagger with U acting on one qubit of the register."""
    dim = rho.shape[0]
    left = 1 << (qubit - 1)
    right = 1 << (n_qubits - qubit)
    t = rho.reshape(left, 2, right, dim)
    t = np.einsum("ab,lbrj->larj", u, t)
    t = t.reshape(dim, left, 2, right)
    t = np.einsum("ab,ilbr->ilar", u.conj(), t)
    return t.reshape(dim, dim)


def _conjugate_step(rho: np.ndarray, step: Step, n_qubits: int) -> np.ndarray:
    if isinstance(step, BooleanStep):
        perm = synaptic_permutation(
            compile_synaptic(step.function), step.controls, step.targets, n_qubits
        )
        out = np.empty_like(rho)
        out[np.ix_(perm, perm)] = rho
        return out
    if isinstance(step, UnitaryStep):
        for gate, target in zip(step.gates, step.targets):
            rho = _conjugate_single(rho, gate, target, n_qubits)
        return rho
    raise ValueError(f"unknown step type {type(step).__name__}")


def averaged_density(
    net: NetworkSpec,
    packets: Sequence[WavePacket],
    t: float = 0.0,
    grid: QuadratureGrid | None = None,
    input_neurons: Sequence[int] | None = None,
) -> DensityMatrix:
    """Network output averaged over the environment's angle distribution.

    Each input neuron is driven by its own packet; non-input neurons start
    quiescent.  Because the packets factor over independent angle blocks and
    the synaptic steps do not depend on the angles, the average of the output
    projector is the step-conjugated tensor product of per-neuron quadrature
    averages; that is what this computes.  The result is renormalized to unit
    trace, absorbing the finite-grid mass of |Psi|^2.

    ``input_neurons`` defaults to neurons 1..len(packets), the first-layer
    convention.
    """
    if grid is None:
        grid = QuadratureGrid()
    if not isinstance(grid, QuadratureGrid):
        raise ValueError(f"grid must be a QuadratureGrid, got {type(grid).__name__}")
    packets = list(packets)
    if not packets:
        raise ValueError("need at least one input packet")
    for p in packets:
        if not isinstance(p, WavePacket):
            raise ValueError(f"packets must be WavePacket instances, got {type(p).__name__}")
    n = net.n_neurons
    if input_neurons is None:
        inputs = tuple(range(1, len(packets) + 1))
    else:
        inputs = tuple(int(q) for q in input_neurons)
    if len(packets) != len(inputs):
        raise ValueError(
            f"{len(packets)} packets for {len(inputs)} input neurons; counts must match"
        )
    if len(set(inputs)) != len(inputs):
        raise ValueError(f"duplicate input neurons: {list(inputs)}")
    for q in inputs:
        if not 1 <= q <= n:
            raise ValueError(f"input neuron {q} out of range 1..{n}")
    single = {
        q: _averaged_qubit_density(p, grid, float(t))
        for q, p in zip(inputs, packets)
    }
    ground = np.array([[1.0, 0.0], [0.0, 0.0]], dtype=np.complex128)
    rho = np.ones((1, 1), dtype=np.complex128)
    for q in range(1, n + 1):
        rho = np.kron(rho, single.get(q, ground))
    for step in net.steps:
        rho = _conjugate_step(rho, step, n)
    trace = float(np.trace(rho).real)
    if trace <= 0.0:
        raise ValueError("averaged state has non-positive quadrature mass")
    return DensityMatrix(n, rho / trace)


def purity(rho) -> float:
    """tr(rho^2): 1 on pure states, 1/2^n on the maximally mixed register."""
    mat = rho.entries if isinstance(rho, DensityMatrix) else np.asarray(rho, dtype=np.complex128)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {mat.shape}")
    return float(np.trace(mat @ mat).real)


def parse_packet(text: str) -> WavePacket:
    """Parse the packet text format: one ``n0 n1 n2 n3 re im`` line per mode.

    Blank lines and ``#`` comments are ignored.  Coefficients are always
    renormalized on load; a warning is emitted when the stored norm deviates
    from 1 by more than 1e-6.
    """
    if not isinstance(text, str):
        raise ParseError(f"expected text, got {type(text).__name__}")
    coeffs: dict[ModeIndex, complex] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 6:
            raise ParseError(
                f"expected 'n0 n1 n2 n3 re im' (6 fields), got {len(parts)}",
                line=lineno,
            )
        try:
            mode = tuple(int(p) for p in parts[:4])
        except ValueError:
            raise ParseError(
                f"mode components {parts[:4]} must be integers", line=lineno
            ) from None
        try:
            value = complex(float(parts[4]), float(parts[5]))
        except ValueError:
            raise ParseError(
                f"coefficient fields {parts[4:]} must be real numbers", line=lineno
            ) from None
        if mode in coeffs:
            raise ParseError(f"duplicate mode {mode}", line=lineno)
        coeffs[mode] = value
    if not coeffs:
        raise ParseError("packet file has no modes")
    norm_sq = sum(abs(v) ** 2 for v in coeffs.values())
    if norm_sq == 0.0:
        raise ParseError("packet has zero norm")
    if abs(norm_sq - 1.0) > _RENORM_WARN:
        warnings.warn(
            f"packet norm^2 was {norm_sq:.9g}; renormalizing to 1", stacklevel=2
        )
    norm = math.sqrt(norm_sq)
    return WavePacket({m: v / norm for m, v in coeffs.items()})


def format_packet(packet: WavePacket) -> str:
    """Render a packet in the text format ``parse_packet`` reads."""
    lines = []
    for mode, value in packet.coefficients.items():
        n0, n1, n2, n3 = mode
        lines.append(f"{n0} {n1} {n2} {n3} {value.real!r} {value.imag!r}")
    return "\n".join(lines) + "\n"


def random_packet(
    truncation: int = DEFAULT_TRUNCATION,
    n_modes: int = 8,
    rng: np.random.Generator | None = None,
) -> WavePacket:
    """Random normalized packet: distinct modes from the truncated lattice.

    Handy for property tests and demos; pass a seeded ``rng`` for
    reproducibility.
    """
    truncation = int(truncation)
    if truncation < 0:
        raise ValueError(f"truncation must be non-negative, got {truncation}")
    side = 2 * truncation + 1
    lattice = side**4
    n_modes = int(n_modes)
    if not 1 <= n_modes <= lattice:
        raise ValueError(
            f"n_modes must be in 1..{lattice} for truncation {truncation}, got {n_modes}"
        )
    if rng is None:
        rng = np.random.default_rng()
    flat = rng.choice(lattice, size=n_modes, replace=False)
    modes = [
        tuple(int(k) - truncation for k in np.unravel_index(f, (side,) * 4))
        for f in flat
    ]
    values = rng.normal(size=n_modes) + 1j * rng.normal(size=n_modes)
    values /= np.linalg.norm(values)
    return WavePacket(
        {m: complex(v) for m, v in zip(modes, values)}, truncation=truncation
    )
