"""Small named quivers and the Λ categories built from them."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .applications import hom_matrix_category, sink_partition, window_quiver
from .bimodule import bimodule_from_hom
from .exact_linalg import field_from_spec
from .functor_modules import FiniteModule, representable
from .quiver_cat import parse_quiver, path_category
from .trimat import build_lambda

QUIVERS = {
    "a2": """field Q
vertex t
vertex u
arrow a : t -> u
""",
    "a3": """field Q
vertex 1
vertex 2
vertex 3
arrow a : 1 -> 2
arrow b : 2 -> 3
""",
    "a3_rel": """field Q
vertex 1
vertex 2
vertex 3
arrow a : 1 -> 2
arrow b : 2 -> 3
relation b*a
""",
    "kronecker": """field Q
vertex 1
vertex 2
arrow a : 1 -> 2
arrow b : 1 -> 2
""",
}

# (U objects, T objects) used to cut each quiver into Λ
PARTITIONS = {
    "a2": (["u"], ["t"]),
    "a3": (["3"], ["1", "2"]),
    "a3_rel": (["3"], ["1", "2"]),
    "kronecker": (["2"], ["1"]),
}

# the fixtures every suite runs over
LAMBDA_FIXTURES = ("a2", "a3", "kronecker", "hom_a2")


@dataclass
class Fixture:
    name: str
    pc: object
    M: object
    L: object


def quiver_text(name, field="Q"):
    return QUIVERS[name].replace("field Q", f"field {field}", 1)


@lru_cache(maxsize=None)
def quiver_category(name, field="Q"):
    return path_category(parse_quiver(quiver_text(name, field)))


@lru_cache(maxsize=None)
def fixture(name, field="Q"):
    """A named Λ fixture; ``field`` is a field spec such as ``"F 7"``."""
    if name == "hom_a2":
        pc = quiver_category("a2", field)
        L = hom_matrix_category(pc)
        return Fixture(name, pc, L.bimod, L)
    if name.startswith("window"):
        n = int(name[len("window"):] or 3)
        pc = path_category(window_quiver(n, field_from_spec(field)))
        spec = sink_partition(pc)
        M = bimodule_from_hom(pc, spec.U_objs, spec.T_objs)
        return Fixture(name, pc, M, build_lambda(M.tcat, M.ucat, M))
    pc = quiver_category(name, field)
    U, T = PARTITIONS[name]
    M = bimodule_from_hom(pc, U, T)
    return Fixture(name, pc, M, build_lambda(M.tcat, M.ucat, M))


def simple(pc, v):
    return FiniteModule.from_arrows(pc, {x: int(x == v) for x in pc.objects}, {})


def simples(pc):
    return {f"S{v}": simple(pc, v) for v in pc.objects}


def projectives(pc):
    return {f"P{v}": representable(pc, v) for v in pc.objects}
