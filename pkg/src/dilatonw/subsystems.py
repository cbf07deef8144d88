"""Names of the tripartite and bipartite subsystems of the five-mode register."""
from __future__ import annotations

from .dilaton import MODES

TRIPARTITE = {
    "AB_IC_I": (0, 1, 3),
    "AB_IB_II": (0, 1, 2),
    "AB_IIC_II": (0, 2, 4),
    "AB_IC_II": (0, 1, 4),
    "AB_IIC_I": (0, 2, 3),
    "AC_IC_II": (0, 3, 4),
}

BIPARTITE = {
    "AB_I": (0, 1),
    "AC_I": (0, 3),
    "AB_II": (0, 2),
    "AC_II": (0, 4),
    "B_IC_I": (1, 3),
    "B_IC_II": (1, 4),
    "B_IIC_I": (2, 3),
    "B_IB_II": (1, 2),
    "C_IC_II": (3, 4),
    "B_IIC_II": (2, 4),
}

_ASCII_MODE = {"A": "a", "B_I": "b1", "B_II": "b2", "C_I": "c1", "C_II": "c2"}


def modes_of(tag: str) -> tuple[int, ...]:
    tag = canonical(tag)
    return TRIPARTITE.get(tag) or BIPARTITE[tag]


def ascii_name(tag: str) -> str:
    """``'AB_IC_I'`` -> ``'a-b1-c1'``."""
    idx = TRIPARTITE.get(tag) or BIPARTITE[tag]
    return "-".join(_ASCII_MODE[MODES[i]] for i in idx)


_BY_ASCII = {ascii_name(t): t for t in (*TRIPARTITE, *BIPARTITE)}


def canonical(name: str) -> str:
    """Accept either a canonical tag or its ASCII flag form."""
    if name in TRIPARTITE or name in BIPARTITE:
        return name
    key = name.strip().lower()
    if key in _BY_ASCII:
        return _BY_ASCII[key]
    known = ", ".join(sorted(_BY_ASCII))
    raise ValueError(f"unknown subsystem {name!r}; expected one of: {known}")


def is_tripartite(tag: str) -> bool:
    return canonical(tag) in TRIPARTITE
