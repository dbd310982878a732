"""Named group constructors and pinned reference data.

Groups are built from exact generator matrices and validated against pinned
fingerprints (order, SL-part, index, degrees) by catalog_selfcheck.  A JSON
catalog file (env var REFLEKT_CATALOG) can add or override entries.
"""

from __future__ import annotations

import json
import os
import re
from fractions import Fraction
from functools import lru_cache

from .cyclotomic import cyc, cyc_from_str, zeta
from .errors import SelfCheckFailed, UnknownName
from .groups import MatGroup, close, derived_subgroup, intersect_SL, reflections, subgroup
from .linalg import Mat

# -- small building blocks ---------------------------------------------------


def t_diag(z) -> Mat:
    """The paper's t(zeta) = diag(zeta, zeta^-1)."""
    z = cyc(z)
    return Mat.diagonal([z, z.inverse()])


SIGMA = Mat([[0, -1], [1, 0]])
S_SWAP = Mat([[0, 1], [1, 0]])


def _quat(a, b, c, d) -> Mat:
    """Unit quaternion a+bi+cj+dk as an SL2 matrix."""
    i = zeta(4)
    return Mat([[cyc(a) + cyc(b) * i, cyc(c) + cyc(d) * i], [-cyc(c) + cyc(d) * i, cyc(a) - cyc(b) * i]])


_H = Fraction(1, 2)
OMEGA_Q = _quat(-_H, _H, _H, _H)  # order-3 unit quaternion (-1+i+j+k)/2

# golden ratio and friends, exactly in Q(zeta_5)
PHI = -(zeta(5, 2) + zeta(5, 3))  # (1+sqrt5)/2
PHI_INV = zeta(5) + zeta(5, 4)  # phi - 1


def binary_tetrahedral_gens():
    return [t_diag(zeta(4)), SIGMA, OMEGA_Q]


def binary_octahedral_gens():
    return binary_tetrahedral_gens() + [t_diag(zeta(8))]


def binary_icosahedral_gens():
    s = _quat(_H, _H, _H, _H)
    u = _quat(0, _H, PHI * _H, PHI_INV * _H)
    return [s, u]


def quaternion_gens():
    return [SIGMA, t_diag(zeta(4))]


_BINARY_GENS = {
    "Itilde2(2)": quaternion_gens,
    "A4tilde": binary_tetrahedral_gens,
    "S4tilde": binary_octahedral_gens,
    "A5tilde": binary_icosahedral_gens,
}

# Extending element for each rank-2 exceptional W: W = <SL-part, x>.
# x is pinned as (scalar zeta(c)^k, quaternion/matrix text); validated by
# catalog_selfcheck against the Table 3 fingerprints, never trusted.
_EXCEPTIONAL: dict[str, tuple[str, str]] = {}  # filled below


def coxeter_from_cartan(cartan) -> list[Mat]:
    """Simple reflection matrices in the root basis: s_i(a_j) = a_j - C_ij a_i."""
    n = len(cartan)
    out = []
    for i in range(n):
        rows = [[cyc(1) if k == j else cyc(0) for j in range(n)] for k in range(n)]
        for j in range(n):
            rows[i][j] = rows[i][j] - cyc(cartan[i][j])
        out.append(Mat(rows))
    return out


def _an_cartan(n):
    return [[2 if i == j else -1 if abs(i - j) == 1 else 0 for j in range(n)] for i in range(n)]


def _bn_cartan(n):
    c = _an_cartan(n)
    c[n - 1][n - 2] = -2  # short root row
    return c


_F4_CARTAN = [
    [2, -1, 0, 0],
    [-1, 2, -1, 0],
    [0, -2, 2, -1],
    [0, 0, -1, 2],
]


def _h3_cartan():
    phi = PHI
    return [
        [cyc(2), -phi, cyc(0)],
        [-phi, cyc(2), cyc(-1)],
        [cyc(0), cyc(-1), cyc(2)],
    ]


def g_de_e_r_gens(de: int, e: int, r: int) -> list[Mat]:
    """Generators of G(de, e, r) as monomial matrices, diagram order.

    Returned as [s?, t1 (twisted swap), t1' (swap), t2, ..., t_{r-1}], with s
    present only when d = de/e > 1, the twisted pair only when e > 1 and
    r > 1, and a plain swap generator set for the symmetric part.
    """
    if de % e:
        raise ValueError("e must divide de")
    d = de // e
    if r == 1:
        return [Mat([[zeta(d)]])] if d > 1 else [Mat([[1]])]

    def perm_swap(i):
        rows = [[cyc(1) if a == b else cyc(0) for b in range(r)] for a in range(r)]
        rows[i][i] = cyc(0)
        rows[i + 1][i + 1] = cyc(0)
        rows[i][i + 1] = cyc(1)
        rows[i + 1][i] = cyc(1)
        return Mat(rows)

    gens = []
    if d > 1:
        diag = [zeta(d)] + [1] * (r - 1)
        gens.append(Mat.diagonal(diag))
    if e > 1:
        z = zeta(de)
        rows = [[cyc(0) for _ in range(r)] for _ in range(r)]
        rows[0][1] = z.inverse()
        rows[1][0] = z
        for k in range(2, r):
            rows[k][k] = cyc(1)
        gens.append(Mat(rows))
    for i in range(r - 1):
        gens.append(perm_swap(i))
    return gens


def g31_gens() -> list[Mat]:
    i = zeta(4)
    h = Fraction(1, 2)
    s = Mat.diagonal([-1, 1, 1, 1])
    t = Mat(
        [
            [h, -h, -h, -h],
            [-h, h, -h, -h],
            [-h, -h, h, -h],
            [-h, -h, -h, h],
        ]
    )
    u = Mat([[0, i, 0, 0], [-i, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
    v = Mat([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]])
    w = Mat([[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
    return [s, t, u, v, w]


def g31_core_gens() -> list[Mat]:
    """The five generators of O_2(G31), the good normal subgroup of order 64."""
    i = zeta(4)
    return [
        Mat.diagonal([-1, -1, 1, 1]),
        Mat.diagonal([-1, 1, -1, 1]),
        Mat([[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 0, -1, 0]]),
        Mat([[0, 0, 1, 0], [0, 0, 0, -1], [1, 0, 0, 0], [0, -1, 0, 0]]),
        Mat([[0, 0, 0, -i], [0, 0, -i, 0], [0, i, 0, 0], [i, 0, 0, 0]]),
    ]


# -- pinned reference data ----------------------------------------------------

# |G|, generator degrees (d1, d2, d3), relation degree e for rank-2 SL2 subgroups
def table2_row(name: str, d: int | None = None):
    if name == "C":
        if d == 2:
            return {"order": 2, "degrees": (2, 2, 2), "e": 4}
        return {"order": d, "degrees": (2, d, d), "e": 2 * d}
    if name == "Itilde2":
        return {"order": 4 * d, "degrees": (4, 2 * d, 2 * (d + 1)), "e": 4 * (d + 1)}
    return {
        "A4tilde": {"order": 24, "degrees": (6, 8, 12), "e": 24},
        "S4tilde": {"order": 48, "degrees": (8, 12, 18), "e": 36},
        "A5tilde": {"order": 120, "degrees": (12, 20, 30), "e": 60},
    }[name]


# W -> (SL-part name, W/Z(W) name, index a) for the rank-2 exceptionals
TABLE3 = {
    "G4": ("Itilde2(2)", "A4", 3),
    "G5": ("A4tilde", "A4", 3),
    "G6": ("Itilde2(2)", "A4", 6),
    "G7": ("A4tilde", "A4", 6),
    "G8": ("A4tilde", "S4", 4),
    "G9": ("S4tilde", "S4", 4),
    "G10": ("A4tilde", "S4", 12),
    "G11": ("S4tilde", "S4", 12),
    "G12": ("A4tilde", "S4", 2),
    "G13": ("S4tilde", "S4", 2),
    "G14": ("A4tilde", "S4", 6),
    "G15": ("S4tilde", "S4", 6),
    "G16": ("A5tilde", "A5", 5),
    "G17": ("A5tilde", "A5", 10),
    "G18": ("A5tilde", "A5", 15),
    "G19": ("A5tilde", "A5", 30),
    "G20": ("A5tilde", "A5", 3),
    "G21": ("A5tilde", "A5", 6),
    "G22": ("A5tilde", "A5", 2),
}

EXCEPTIONAL_DEGREES = {
    "G4": (4, 6),
    "G5": (6, 12),
    "G6": (4, 12),
    "G7": (12, 12),
    "G8": (8, 12),
    "G9": (8, 24),
    "G10": (12, 24),
    "G11": (24, 24),
    "G12": (6, 8),
    "G13": (8, 12),
    "G14": (6, 24),
    "G15": (12, 24),
    "G16": (20, 30),
    "G17": (20, 60),
    "G18": (30, 60),
    "G19": (60, 60),
    "G20": (12, 30),
    "G21": (12, 60),
    "G22": (12, 20),
}

_BINARY_ORDERS = {"Itilde2(2)": 8, "A4tilde": 24, "S4tilde": 48, "A5tilde": 120}

# Table 1: W, degrees of W, quotient by {1,-1}, degrees of quotient
TABLE1 = {
    "G12": ((6, 8), "A3", (2, 3, 4)),
    "G13": ((8, 12), "B3", (2, 4, 6)),
    "G22": ((12, 20), "H3", (2, 6, 10)),
}

# Table 4: (G, W) pairs with non-abelian quotient, G != {1,-1}
TABLE4_FIXED = {
    "G12": ((6, 8), 12, "A2", (2, 3, 1)),
    "G13": ((8, 12), 12, "A2xA1", (2, 3, 2)),
    "G14": ((6, 24), 12, "G(3,1,2)", (3, 6, 1)),
    "G15": ((12, 24), 12, "G(3,1,2)xA1", (3, 6, 2)),
}


def expected_order(name: str, params) -> int:
    if name == "G":
        de, e, r = params
        return de**r * _factorial(r) // e
    if name == "C":
        return params
    if name == "I2":
        return 2 * params
    if name == "Itilde2":
        return 4 * params
    if name == "mu":
        p, q = params
        return p * q
    if name in _BINARY_ORDERS:
        return _BINARY_ORDERS[name]
    if name in EXCEPTIONAL_DEGREES:
        d1, d2 = EXCEPTIONAL_DEGREES[name]
        return d1 * d2
    if name.startswith("A") and name[1:].isdigit():
        return _factorial(int(name[1:]) + 1)
    if name.startswith("B") and name[1:].isdigit():
        n = int(name[1:])
        return 2**n * _factorial(n)
    if name == "F4":
        return 1152
    if name == "H3":
        return 120
    if name == "G31":
        return 46080
    if name == "G31_O2":
        return 64
    raise UnknownName(name)


def _factorial(n):
    out = 1
    for k in range(2, n + 1):
        out *= k
    return out


def expected_degrees(name: str, params) -> tuple[int, ...] | None:
    """Reflection degrees for catalog reflection groups (None when not one)."""
    if name == "G":
        de, e, r = params
        d = de // e
        degs = [de * k for k in range(1, r)] + [r * d]
        return tuple(sorted(degs))
    if name == "C":
        return (params,)
    if name == "I2":
        return (2, params)
    if name == "mu":
        return tuple(sorted(params))
    if name in EXCEPTIONAL_DEGREES:
        return EXCEPTIONAL_DEGREES[name]
    if name.startswith("A") and name[1:].isdigit():
        return tuple(range(2, int(name[1:]) + 2))
    if name.startswith("B") and name[1:].isdigit():
        return tuple(2 * k for k in range(1, int(name[1:]) + 1))
    if name == "F4":
        return (2, 6, 8, 12)
    if name == "H3":
        return (2, 6, 10)
    if name == "G31":
        return (8, 12, 20, 24)
    return None


# -- construction -------------------------------------------------------------


def _gens_for(name: str, params):
    if name == "C":
        return [t_diag(zeta(params))]
    if name == "I2":
        return [t_diag(zeta(params)), S_SWAP]
    if name == "Itilde2":
        return [SIGMA, t_diag(zeta(2 * params))]
    if name == "mu":
        p, q = params
        return [Mat.diagonal([zeta(p), 1]), Mat.diagonal([1, zeta(q)])]
    if name == "G":
        return g_de_e_r_gens(*params)
    if name in _BINARY_GENS:
        return _BINARY_GENS[name]()
    if name in _EXCEPTIONAL:
        base, ext_text = _EXCEPTIONAL[name]
        base_name = base[: base.index("(")] if "(" in base and not base.startswith("Itilde2(") else base
        if base == "Itilde2(2)":
            gens = quaternion_gens()
        else:
            gens = _BINARY_GENS[base]()
        return gens + [_mat_from_text(ext_text)]
    if name.startswith("A") and name[1:].isdigit():
        return coxeter_from_cartan(_an_cartan(int(name[1:])))
    if name.startswith("B") and name[1:].isdigit():
        return coxeter_from_cartan(_bn_cartan(int(name[1:])))
    if name == "F4":
        return coxeter_from_cartan(_F4_CARTAN)
    if name == "H3":
        return coxeter_from_cartan(_h3_cartan())
    if name == "G31":
        return g31_gens()
    if name == "G31_O2":
        return g31_core_gens()
    raise UnknownName(name)


def _mat_from_text(text: str) -> Mat:
    rows = [[cyc_from_str(x) for x in row.split(",")] for row in text.split(";")]
    return Mat(rows)


def _mat_to_text(m: Mat) -> str:
    return "; ".join(", ".join(str(x) for x in r) for r in m.rows)


_group_cache: dict = {}


def get_group(name: str, params=None) -> MatGroup:
    """Build a catalog group by name, validated against its expected order."""
    key = (name, params if not isinstance(params, list) else tuple(params))
    if key in _group_cache:
        return _group_cache[key]
    ext = _load_external()
    if key in ext:
        G = close([_mat_from_text(t) for t in ext[key]["matrices"]])
        want = ext[key].get("expected", {}).get("order")
        if want is not None and G.order != want:
            raise SelfCheckFailed(f"{name}{params or ''}: order {G.order}, expected {want}")
        _group_cache[key] = G
        return G
    gens = _gens_for(name, params)
    G = close(gens)
    want = expected_order(name, params)
    if G.order != want:
        raise SelfCheckFailed(f"{name}{params or ''}: order {G.order}, expected {want}")
    _group_cache[key] = G
    return G


_NAME_RE = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*?)(?:\(([0-9,\s]+)\))?$")


def parse_group_name(text: str) -> tuple[str, int | tuple | None]:
    """Parse CLI-style names: 'G12', 'C(5)', 'G(4,2,2)', 'Itilde2(3)'."""
    m = _NAME_RE.match(text.strip())
    if not m:
        raise UnknownName(text)
    name, args = m.group(1), m.group(2)
    if args is None:
        return name, None
    vals = tuple(int(x) for x in args.replace(" ", "").split(","))
    return name, vals[0] if len(vals) == 1 else vals


def group_from_name(text: str) -> MatGroup:
    name, params = parse_group_name(text)
    return get_group(name, params)


def sl_type_of(G: MatGroup) -> str:
    """Abstract type of a finite SL2 subgroup from (order, derived order)."""
    n = G.order
    dn = derived_subgroup(G).order
    if dn == 1:
        return f"C({n})"
    if n == 120 and dn == 120:
        return "A5tilde"
    if n == 48 and dn == 24:
        return "S4tilde"
    if n == 24 and dn == 8:
        return "A4tilde"
    if n % 4 == 0 and dn == n // 4:
        return f"Itilde2({n // 4})"
    raise SelfCheckFailed(f"unrecognized SL2 subgroup: order {n}, derived {dn}")


def catalog_selfcheck(name: str, params=None) -> dict:
    """Recompute a catalog entry's fingerprints and compare to pinned data."""
    G = get_group(name, params)
    report = {"name": name, "params": params, "order": G.order, "ok": True, "diff": []}
    want = expected_order(name, params)
    if G.order != want:
        report["ok"] = False
        report["diff"].append(f"order {G.order} != {want}")
    if name in TABLE3:
        S = intersect_SL(G)
        sl = sl_type_of(S)
        a = G.order // S.order
        want_sl, _, want_a = TABLE3[name]
        report["sl_part"] = sl
        report["a"] = a
        if sl != want_sl:
            report["ok"] = False
            report["diff"].append(f"SL part {sl} != {want_sl}")
        if a != want_a:
            report["ok"] = False
            report["diff"].append(f"index {a} != {want_a}")
    degs = expected_degrees(name, params)
    if degs is not None:
        from .invariants import group_degrees

        got = tuple(sorted(group_degrees(G)))
        report["degrees"] = got
        if got != tuple(sorted(degs)):
            report["ok"] = False
            report["diff"].append(f"degrees {got} != {tuple(sorted(degs))}")
        refl_ids = [c.element_id for c in reflections(G)]
        if subgroup(G, refl_ids).order != G.order:
            report["ok"] = False
            report["diff"].append("not generated by its reflections")
    if not report["ok"]:
        raise SelfCheckFailed("; ".join(report["diff"]))
    return report


# -- external JSON catalog -----------------------------------------------------


@lru_cache(maxsize=1)
def _load_external() -> dict:
    path = os.environ.get("REFLEKT_CATALOG")
    if not path:
        return {}
    with open(path) as fh:
        data = json.load(fh)
    out = {}
    for entry in data if isinstance(data, list) else [data]:
        params = entry.get("params")
        if isinstance(params, list):
            params = tuple(params)
        out[(entry["name"], params)] = entry
    return out


def entry_to_json(name: str, params=None) -> dict:
    """Serialize a catalog entry in the documented JSON format."""
    G = get_group(name, params)
    mats = [_mat_to_text(g) for g in G.generators]
    conductor = 1
    for g in G.generators:
        for row in g.rows:
            for x in row:
                conductor = conductor * x.n // _gcd(conductor, x.n)
    expected = {"order": G.order}
    degs = expected_degrees(name, params)
    if degs is not None:
        expected["degrees"] = list(degs)
    return {
        "name": name,
        "params": list(params) if isinstance(params, tuple) else params,
        "conductor": conductor,
        "matrices": mats,
        "expected": expected,
    }


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a
