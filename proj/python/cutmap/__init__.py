"""Cut large circuits for a chain of QPUs, map the pieces and reconstruct expectation values.

The commands mirror the ``cutmap`` executable. Keyword names follow its long options
(``cost_order`` for ``--cost-order``, ``reuse=n`` for ``--reuse n``) and each call returns
``(exit_code, report)`` with the report as a dict.
"""

import json

from . import _core
from ._core import benchmark_names, benchmark_qasm, ground_truth, overheads, variant_count

__all__ = [
    "cut",
    "map_circuit",
    "run",
    "benchmark_names",
    "benchmark_qasm",
    "ground_truth",
    "overheads",
    "variant_count",
]


def _call(fn, kwargs):
    code, text = fn(**kwargs)
    return code, json.loads(text)


def cut(**kwargs):
    return _call(_core.cut, kwargs)


def map_circuit(**kwargs):
    return _call(_core.map, kwargs)


def run(**kwargs):
    return _call(_core.run, kwargs)
