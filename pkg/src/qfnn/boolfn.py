"""Boolean truth tables and their compilation into synaptic permutation gates.

A function g: {0,1}^m -> {0,1}^n becomes the controlled bit-flip

    S_g = sum_s |s><s| (x) X^{g(s)}

which XORs g(s) into the target register while leaving the control register
untouched.  Because XOR is its own inverse, every synaptic gate squares to
the identity.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import ParseError
from .qstate import StateVector


def _check_arity(m: int, n: int) -> tuple[int, int]:
    m, n = int(m), int(n)
    if m < 1 or n < 1:
        raise ValueError(f"arities must be at least 1, got m={m}, n={n}")
    return m, n


@dataclass(frozen=True)
class BooleanFunction:
    """Truth table of g: {0,1}^m -> {0,1}^n.

    ``outputs[s]`` is the integer value of g on input ``s``, where the input
    bit string is read most-significant-bit first (input "10" is s=2).
    """

    m: int
    n: int
    outputs: tuple[int, ...]

    def __post_init__(self):
        m, n = _check_arity(self.m, self.n)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "n", n)
        outs = tuple(int(v) for v in self.outputs)
        if len(outs) != 2**m:
            raise ValueError(
                f"need {2**m} outputs for m={m}, got {len(outs)}"
            )
        for s, v in enumerate(outs):
            if not 0 <= v < 2**n:
                raise ValueError(
                    f"output {v} for input {s} does not fit in {n} bits"
                )
        object.__setattr__(self, "outputs", outs)

    @classmethod
    def from_output_strings(cls, rows: Sequence[str]) -> "BooleanFunction":
        """Build from output bit strings listed in ascending input order.

        ``from_output_strings(["0", "1", "1", "0"])`` is XOR on two inputs.
        """
        rows = list(rows)
        count = len(rows)
        if count < 2 or count & (count - 1):
            raise ValueError(f"row count must be a power of two >= 2, got {count}")
        n = len(rows[0])
        if n < 1 or any(len(r) != n for r in rows):
            raise ValueError("output strings must all have the same nonzero length")
        if any(ch not in "01" for r in rows for ch in r):
            raise ValueError("output strings may only contain 0 and 1")
        return cls(count.bit_length() - 1, n, tuple(int(r, 2) for r in rows))

    def value(self, s: int) -> int:
        """g(s) as an integer."""
        if not 0 <= int(s) < 2**self.m:
            raise ValueError(f"input {s} out of range for m={self.m}")
        return self.outputs[int(s)]

    def value_bits(self, bits: str) -> str:
        """g applied to a bit string, returned as a bit string."""
        if len(bits) != self.m or any(ch not in "01" for ch in bits):
            raise ValueError(f"expected an {self.m}-bit input string, got {bits!r}")
        return format(self.outputs[int(bits, 2)], f"0{self.n}b")


def local_map(g: BooleanFunction, l: int, s: str) -> int:
    """Component map g_l: the 1-based l-th output bit of g on input ``s``."""
    if not 1 <= int(l) <= g.n:
        raise ValueError(f"output component {l} out of range 1..{g.n}")
    return int(g.value_bits(s)[int(l) - 1])


@dataclass(frozen=True)
class SynapticGate:
    """Controlled bit-flip compiled from a truth table.

    ``flip_masks[s]`` is the XOR mask applied to the n target bits when the m
    control bits read ``s``.  The gate permutes basis states, never touches
    the controls, and is its own inverse.
    """

    m: int
    n: int
    flip_masks: tuple[int, ...]

    def __post_init__(self):
        m, n = _check_arity(self.m, self.n)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "n", n)
        masks = tuple(int(v) for v in self.flip_masks)
        if len(masks) != 2**m:
            raise ValueError(f"need {2**m} masks for m={m}, got {len(masks)}")
        for s, v in enumerate(masks):
            if not 0 <= v < 2**n:
                raise ValueError(f"mask {v} for control value {s} does not fit in {n} bits")
        object.__setattr__(self, "flip_masks", masks)

    def to_matrix(self) -> np.ndarray:
        """Dense 2^(m+n) permutation matrix, controls as the leading bits."""
        dim = 2 ** (self.m + self.n)
        t_mask = 2**self.n - 1
        mat = np.zeros((dim, dim), dtype=np.complex128)
        for k in range(dim):
            s = k >> self.n
            t = k & t_mask
            mat[(s << self.n) | (t ^ self.flip_masks[s]), k] = 1.0
        return mat


def compile_synaptic(g: BooleanFunction) -> SynapticGate:
    """Compile a truth table into its synaptic gate (masks are the outputs)."""
    return SynapticGate(g.m, g.n, g.outputs)


def truth_table_of(gate: SynapticGate) -> BooleanFunction:
    """Recover the truth table: the image of |s>|0...0> reads off g(s)."""
    return BooleanFunction(gate.m, gate.n, gate.flip_masks)


def validate_wiring(
    n_qubits: int, controls: Sequence[int], targets: Sequence[int], m: int, n: int
) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Check control/target index lists against a register; returns them as tuples."""
    controls = tuple(int(q) for q in controls)
    targets = tuple(int(q) for q in targets)
    if len(controls) != m:
        raise ValueError(f"expected {m} control indices, got {len(controls)}")
    if len(targets) != n:
        raise ValueError(f"expected {n} target indices, got {len(targets)}")
    for q in controls + targets:
        if not 1 <= q <= n_qubits:
            raise ValueError(f"neuron index {q} out of range 1..{n_qubits}")
    if len(set(controls)) != len(controls):
        raise ValueError(f"duplicate control indices: {list(controls)}")
    if len(set(targets)) != len(targets):
        raise ValueError(f"duplicate target indices: {list(targets)}")
    overlap = set(controls) & set(targets)
    if overlap:
        raise ValueError(f"controls and targets overlap on {sorted(overlap)}")
    return controls, targets


def synaptic_permutation(
    gate: SynapticGate,
    controls: Sequence[int],
    targets: Sequence[int],
    n_qubits: int,
) -> np.ndarray:
    """Basis-index image array of the gate wired into an ``n_qubits`` register.

    ``perm[k]`` is the index the gate sends basis state ``k`` to.  Controls
    and targets are 1-based neuron indices and must be disjoint.
    """
    controls, targets = validate_wiring(n_qubits, controls, targets, gate.m, gate.n)
    idx = np.arange(2**n_qubits, dtype=np.int64)
    s = np.zeros_like(idx)
    for j, q in enumerate(controls):
        s |= ((idx >> (n_qubits - q)) & 1) << (gate.m - 1 - j)
    masks = np.asarray(gate.flip_masks, dtype=np.int64)[s]
    flips = np.zeros_like(idx)
    for l, q in enumerate(targets):
        flips |= ((masks >> (gate.n - 1 - l)) & 1) << (n_qubits - q)
    return idx ^ flips


def apply_synaptic(
    state: StateVector,
    gate: SynapticGate,
    controls: Sequence[int],
    targets: Sequence[int],
) -> StateVector:
    """Apply a synaptic gate to a register: |s>|t> -> |s>|t XOR g(s)>."""
    perm = synaptic_permutation(gate, controls, targets, state.n_qubits)
    new_amps = np.empty_like(state.amps)
    new_amps[perm] = state.amps
    return StateVector(state.n_qubits, new_amps)


def parse_truth_table(text: str) -> BooleanFunction:
    """Parse the truth-table text format.

    One line per input, in ascending input order::

        # XOR of two inputs
        00 -> 0
        01 -> 1
        10 -> 1
        11 -> 0

    Blank lines and ``#`` comments are ignored.  Every input string must
    appear exactly once and all widths must agree.
    """
    if not isinstance(text, str):
        raise ParseError(f"expected text, got {type(text).__name__}")
    rows: list[tuple[int, str, str]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "->" not in line:
            raise ParseError(f"expected 'input -> output', got {line!r}", line=lineno)
        left, _, right = line.partition("->")
        inp, out = left.strip(), right.strip()
        for part, which in ((inp, "input"), (out, "output")):
            if not part or any(ch not in "01" for ch in part):
                raise ParseError(
                    f"{which} {part!r} is not a binary string", line=lineno
                )
        rows.append((lineno, inp, out))
    if not rows:
        raise ParseError("truth table is empty")
    m = len(rows[0][1])
    n = len(rows[0][2])
    if len(rows) != 2**m:
        raise ParseError(
            f"expected {2**m} rows for {m}-bit inputs, got {len(rows)}",
            line=rows[-1][0],
        )
    outputs = []
    for s, (lineno, inp, out) in enumerate(rows):
        if len(inp) != m:
            raise ParseError(
                f"input width {len(inp)} differs from first row ({m})", line=lineno
            )
        if len(out) != n:
            raise ParseError(
                f"output width {len(out)} differs from first row ({n})", line=lineno
            )
        if int(inp, 2) != s:
            raise ParseError(
                f"inputs must appear in ascending order; expected "
                f"{format(s, f'0{m}b')}, got {inp}",
                line=lineno,
            )
        outputs.append(int(out, 2))
    return BooleanFunction(m, n, tuple(outputs))


def format_truth_table(g: BooleanFunction) -> str:
    """Render a truth table in the same text format ``parse_truth_table`` reads."""
    lines = [
        f"{format(s, f'0{g.m}b')} -> {format(g.outputs[s], f'0{g.n}b')}"
        for s in range(2**g.m)
    ]
    return "\n".join(lines) + "\n"
