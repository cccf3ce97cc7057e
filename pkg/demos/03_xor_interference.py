"""
Driving a network with superposed inputs
========================================

The exclusive-or network has one input neuron, a hidden pair, and one
output wired as XOR of the pair.  The first synaptic step spreads |0> to
|01> and |1> to |10>, so the two hidden patterns always disagree and the
output fires with certainty, whatever superposition drives the input.
"""

import math

import numpy as np

from qfnn import GateParams, branch_amplitudes, run_history, xor_network

net = xor_network()
print(f"layers {net.layers}, steps {len(net.steps)}")

# A generic superposed drive.
phi = GateParams(0.3, 1.1, 5.2, 2.4)
state = run_history(net, (phi,), (1,))

print("\nsurviving branches (bit order: input, hidden pair, output):")
for bits, amp in branch_amplitudes(state, threshold=1e-12):
    print(f"  |{bits}>  amplitude {amp.real:+.6f}{amp.imag:+.6f}j")

p_fire = float(np.sum(np.abs(state.amps[1::2]) ** 2))
print(f"output firing probability: {p_fire:.12f}")

# The hidden pair is never 00 or 11; the XOR sees 01 or 10 only.
probs = np.abs(state.amps) ** 2
leak = sum(
    p
    for idx, p in enumerate(probs)
    if ((idx >> 2) & 1) == ((idx >> 1) & 1)
)
print(f"probability of agreeing hidden pair: {leak:.3e}")

# Sweep the drive angle: the output stays certain while the input weights
# move, which is the point of wiring the output as XOR of complements.
print("\n  phi3/pi   P(input fires)   P(output fires)")
for phi3 in np.linspace(0.0, 2.0 * math.pi, 5):
    s = run_history(net, (GateParams(0, 0, 0, phi3),), (1,))
    p = np.abs(s.amps) ** 2
    p_in = float(p[8:].sum())
    print(f"  {phi3 / math.pi:7.3f}   {p_in:14.6f}   {float(p[1::2].sum()):15.12f}")
