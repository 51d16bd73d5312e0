"""Quantum key-recovery attacks on SIMON.

Modules:

* ``simon``: the classical cipher and its key schedule;
* ``circuit``, ``decompose``, ``analysis``, ``simulate``: circuit IR, Toffoli
  and MCX lowering, depth scheduling and resource summaries, simulators;
* ``simon_circuits``, ``iterators``: reversible SIMON, the h circuit and the
  QAA iterators of the attacks;
* ``qaa``: iteration counts and amplitude amplification simulation;
* ``differential``: differential attack data and its classical side;
* ``cost``, ``published``: the attack cost model and the reference tables;
* ``toy``: the desk-scale end-to-end round-key recovery;
* ``acceptance``, ``cli``: acceptance checks and the command line.
"""

__version__ = "0.1.0"

from .simon import SimonParams, decrypt, encrypt, encrypt_int, get_variant, key_schedule

__all__ = ["SimonParams", "decrypt", "encrypt", "encrypt_int", "get_variant", "key_schedule", "__version__"]
