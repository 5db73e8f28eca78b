"""Cut selection for mixed-integer programs.

A self-contained research artifact: a bounded-variable primal simplex, Gomory
fractional cuts, the standard cut-quality measures and greedy parallelism
filtering, an adversarial instance family with a certified good-lambda window,
a bipartite constraint/variable graph encoding, a small message-passing policy
network with hand-written gradients, and a REINFORCE trainer.

Everything is implemented in C++ and exposed here one-to-one via the `_core`
extension module.
"""

from ._core import *  # noqa: F401,F403
from ._core import __doc__ as _core_doc

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "1.0.0"
