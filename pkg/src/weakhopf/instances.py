"""Built-in instance generators and the persistent instance file format.

Instance files are JSON documents with sparse structure-constant tables and
rational literals like "3/4"; zero entries are omitted and duplicate index
tuples are a hard error.  See the README for the full schema.

Generators:
  * groupoid_algebra  -- basis = arrows of the equivalence-relation groupoid
    generated by the given arrows (matrix-unit product, group-like coproduct)
  * group_algebra / monoid_algebra -- ordinary bialgebras from a Cayley table
  * super_line -- exterior algebra on one odd generator with the graded flip
  * dual_instance -- transpose all structure maps, swapping (m, e), (delta, eps)
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .bimonad import Algebra, Coalgebra, WeakBraidedBimonad, WeakYBPair
from .errors import (
    IndexOutOfRange,
    InvalidSpec,
    NoUnit,
    NotAssociative,
    SchemaError,
)
from .exactmat import Mat
from .tensorexpr import (
    TensorMap,
    compose,
    flip_map,
    from_table,
    graded_flip_map,
    identity_map,
    maps_equal,
)


@dataclass(frozen=True)
class GroupoidSpec:
    objects: int
    arrows: tuple = ()  # generating (source, target) pairs; inverses are formal

    def components(self):
        parent = list(range(self.objects))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for s, t in self.arrows:
            if not (0 <= s < self.objects and 0 <= t < self.objects):
                raise InvalidSpec(f"arrow ({s}, {t}) out of range")
            parent[find(s)] = find(t)
        return [find(x) for x in range(self.objects)]

    def arrow_basis(self):
        """All composable arrows: ordered object pairs in a common component."""
        comp = self.components()
        return [(u, v) for u in range(self.objects) for v in range(self.objects)
                if comp[u] == comp[v]]


def full_groupoid(objects: int) -> GroupoidSpec:
    return GroupoidSpec(objects, tuple((0, t) for t in range(1, objects)))


def discrete_groupoid(objects: int) -> GroupoidSpec:
    return GroupoidSpec(objects, ())


def groupoid_algebra(spec: GroupoidSpec, name: str = "") -> WeakBraidedBimonad:
    """Arrows as basis, composition-or-zero product, group-like coproduct."""
    basis = spec.arrow_basis()
    n = len(basis)
    if n == 0:
        raise InvalidSpec("groupoid has no arrows")
    index = {arrow: k for k, arrow in enumerate(basis)}
    m_entries = {}
    for i, (u, v) in enumerate(basis):
        for j, (w, z) in enumerate(basis):
            if v == w:
                m_entries[(i, j, index[(u, z)])] = 1
    e_entries = {(index[(u, u)],): 1 for u in range(spec.objects)
                 if (u, u) in index}
    delta_entries = {(i, i, i): 1 for i in range(n)}
    eps_entries = {(i,): 1 for i in range(n)}
    return WeakBraidedBimonad(
        alg=Algebra(n, from_table(n, 2, 1, m_entries), from_table(n, 0, 1, e_entries)),
        coa=Coalgebra(n, from_table(n, 1, 2, delta_entries),
                      from_table(n, 1, 0, eps_entries)),
        yb=WeakYBPair.make(flip_map(n)),
        name=name or f"groupoid({spec.objects},{len(spec.arrows)} arrows)",
    )


def groupoid_antipode(spec: GroupoidSpec) -> TensorMap:
    """The known antipode: each arrow to its inverse."""
    basis = spec.arrow_basis()
    index = {arrow: k for k, arrow in enumerate(basis)}
    entries = {(i, index[(v, u)]): 1 for i, (u, v) in enumerate(basis)}
    return from_table(len(basis), 1, 1, entries)


def _check_table(table):
    n = len(table)
    for row in table:
        if len(row) != n or any(not (0 <= v < n) for v in row):
            raise InvalidSpec("Cayley table is not square over its index set")
    unit = None
    for u in range(n):
        if all(table[u][j] == j and table[j][u] == j for j in range(n)):
            unit = u
            break
    if unit is None:
        raise NoUnit("table has no two-sided unit")
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if table[table[a][b]][c] != table[a][table[b][c]]:
                    raise NotAssociative(f"({a}*{b})*{c} != {a}*({b}*{c})")
    return unit


def monoid_algebra(table, name: str = "") -> WeakBraidedBimonad:
    """Ordinary bialgebra on a monoid: group-like coproduct, flip braiding."""
    unit = _check_table(table)
    n = len(table)
    m_entries = {(i, j, table[i][j]): 1 for i in range(n) for j in range(n)}
    return WeakBraidedBimonad(
        alg=Algebra(n, from_table(n, 2, 1, m_entries),
                    from_table(n, 0, 1, {(unit,): 1})),
        coa=Coalgebra(n, from_table(n, 1, 2, {(i, i, i): 1 for i in range(n)}),
                      from_table(n, 1, 0, {(i,): 1 for i in range(n)})),
        yb=WeakYBPair.make(flip_map(n)),
        name=name or f"monoid({n})",
    )


def group_algebra(table, name: str = "") -> WeakBraidedBimonad:
    """monoid_algebra plus a check that every element is invertible."""
    unit = _check_table(table)
    n = len(table)
    for a in range(n):
        if not any(table[a][b] == unit and table[b][a] == unit for b in range(n)):
            raise InvalidSpec(f"element {a} has no inverse")
    return monoid_algebra(table, name=name or f"group({n})")


def cyclic_group_table(n: int):
    return [[(i + j) % n for j in range(n)] for i in range(n)]


def super_line() -> WeakBraidedBimonad:
    """Exterior algebra on one odd generator x with the graded flip."""
    m_entries = {(0, 0, 0): 1, (0, 1, 1): 1, (1, 0, 1): 1}
    delta_entries = {(0, 0, 0): 1, (1, 1, 0): 1, (1, 0, 1): 1}
    return WeakBraidedBimonad(
        alg=Algebra(2, from_table(2, 2, 1, m_entries),
                    from_table(2, 0, 1, {(0,): 1})),
        coa=Coalgebra(2, from_table(2, 1, 2, delta_entries),
                      from_table(2, 1, 0, {(0,): 1})),
        yb=WeakYBPair.make(graded_flip_map((0, 1))),
        name="SL",
    )


def dual_instance(bim: WeakBraidedBimonad) -> WeakBraidedBimonad:
    """Transpose all structure maps, swapping (m, e) with (delta, eps)."""
    n = bim.n

    def t(f: TensorMap) -> TensorMap:
        return TensorMap(f.cod, f.dom, f.mat.transpose())

    return WeakBraidedBimonad(
        alg=Algebra(n, t(bim.delta), t(bim.eps)),
        coa=Coalgebra(n, t(bim.m), t(bim.e)),
        yb=WeakYBPair(tau=t(bim.tau), tau_prime=t(bim.tau_prime),
                      nabla=t(bim.nabla)),
        name=f"dual({bim.name})" if bim.name else "dual",
    )


# built-in instances used throughout the test and acceptance suites
def g2() -> WeakBraidedBimonad:
    return groupoid_algebra(full_groupoid(2), name="G2")


def k2() -> WeakBraidedBimonad:
    return groupoid_algebra(discrete_groupoid(2), name="K2")


def z2() -> WeakBraidedBimonad:
    return group_algebra(cyclic_group_table(2), name="Z2")


def sl() -> WeakBraidedBimonad:
    return super_line()


def nz() -> WeakBraidedBimonad:
    return monoid_algebra([[0, 1], [1, 1]], name="NZ")


BUILTINS = {"g2": g2, "k2": k2, "z2": z2, "sl": sl, "nz": nz}


# ---------------------------------------------------------------------------
# file format
# ---------------------------------------------------------------------------

_EXPECTED_KEYS = {"base_dim", "tensor_dim", "gamma_rank"}


def _parse_rat(value, where):
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise SchemaError("rational literals must be strings like \"p/q\" or ints",
                          where)
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError) as exc:
        raise SchemaError(f"bad rational literal {value!r}: {exc}", where) from None


def _read_table(doc, key, index_count, dims, required=True):
    if key not in doc:
        if required:
            raise SchemaError(f"missing field {key!r}", key)
        return None
    entries = {}
    table = doc[key]
    if not isinstance(table, list):
        raise SchemaError(f"field {key!r} must be a list of entries", key)
    for pos, item in enumerate(table):
        where = f"{key}[{pos}]"
        if not isinstance(item, list) or len(item) != index_count + 1:
            raise SchemaError(
                f"entry must be a list of {index_count} indices and a coefficient",
                where)
        idx = item[:index_count]
        for axis, (i, d) in enumerate(zip(idx, dims)):
            if not isinstance(i, int) or isinstance(i, bool) or not 0 <= i < d:
                raise IndexOutOfRange(
                    f"index {i!r} out of range for dimension {d}", where)
        key_t = tuple(idx)
        if key_t in entries:
            raise SchemaError(f"duplicate index tuple {key_t}", where)
        entries[key_t] = _parse_rat(item[index_count], where)
    return entries


def _split_index(flat, n, arity):
    idx = []
    for k in range(arity - 1, -1, -1):
        idx.append(flat // n ** k)
        flat %= n ** k
    return idx


def _table_from_map(f: TensorMap, in_arity, out_arity, n):
    """Sparse [domain indices..., codomain indices..., coeff-string] rows."""
    rows = []
    mat = f.mat
    for row in range(mat.rows):
        for col in range(mat.cols):
            v = mat.data[row][col]
            if v == 0:
                continue
            rows.append(_split_index(col, n, in_arity)
                        + _split_index(row, n, out_arity) + [str(Fraction(v))])
    rows.sort(key=lambda row: row[:-1])
    return rows


def _detect_graded_flip(tau: TensorMap, n):
    """The 0/1 grading reproducing tau as a graded flip, or None."""
    signs = {}
    for i in range(n):
        for j in range(n):
            col = i * n + j
            expect_row = j * n + i
            for row in range(n * n):
                v = tau.mat.data[row][col]
                if row == expect_row:
                    if v not in (1, -1):
                        return None
                    signs[(i, j)] = v
                elif v != 0:
                    return None
    grading = tuple(1 if signs[(i, i)] == -1 else 0 for i in range(n))
    for i in range(n):
        for j in range(n):
            want = -1 if grading[i] and grading[j] else 1
            if signs[(i, j)] != want:
                return None
    return grading


def save(bim: WeakBraidedBimonad, path, expected=None):
    """Write the canonical JSON encoding; returns the text that was written."""
    text = to_json_text(bim, expected=expected)
    Path(path).write_text(text, encoding="utf-8")
    return text


def to_json_text(bim: WeakBraidedBimonad, expected=None) -> str:
    n = bim.n
    doc = {
        "name": bim.name or "instance",
        "dim": n,
        "m": _table_from_map(bim.m, 2, 1, n),
        "e": _table_from_map(bim.e, 0, 1, n),
        "delta": _table_from_map(bim.delta, 1, 2, n),
        "eps": _table_from_map(bim.eps, 1, 0, n),
    }
    if bim.tau == flip_map(n):
        doc["tau"] = "flip"
    else:
        grading = _detect_graded_flip(bim.tau, n)
        if grading is not None:
            doc["tau"] = "flip"
            doc["grading"] = list(grading)
        else:
            doc["tau"] = _table_from_map(bim.tau, 2, 2, n)
    involution = maps_equal(compose([bim.tau, bim.tau]), identity_map((n, n)))
    if bim.tau_prime != bim.tau or not involution:
        doc["tau_prime"] = _table_from_map(bim.tau_prime, 2, 2, n)
    exp = expected if expected is not None else bim.expected
    if exp:
        unknown = set(exp) - _EXPECTED_KEYS
        if unknown:
            raise SchemaError(f"unknown expected keys {sorted(unknown)}", "expected")
        doc["expected"] = {k: int(v) for k, v in sorted(exp.items())}
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def load(path) -> WeakBraidedBimonad:
    """Load and validate an instance file; exact round trip with save."""
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise SchemaError(f"not valid JSON: {exc}", str(path)) from None
    return from_doc(doc)


def from_doc(doc) -> WeakBraidedBimonad:
    if not isinstance(doc, dict):
        raise SchemaError("instance document must be a JSON object", "root")
    name = doc.get("name", "")
    if not isinstance(name, str):
        raise SchemaError("name must be a string", "name")
    n = doc.get("dim")
    if not isinstance(n, int) or isinstance(n, bool) or n <= 0:
        raise SchemaError("dim must be a positive integer", "dim")

    m_tab = _read_table(doc, "m", 3, (n, n, n))
    e_tab = _read_table(doc, "e", 1, (n,))
    # delta rows are [i, j, k, coeff] for coefficient of b_j (x) b_k in
    # delta(b_i): reorder to from_table's domain-then-codomain convention
    d_raw = _read_table(doc, "delta", 3, (n, n, n))
    eps_tab = _read_table(doc, "eps", 1, (n,))
    m_map = from_table(n, 2, 1, {(i, j, k): v for (i, j, k), v in m_tab.items()})
    e_map = from_table(n, 0, 1, {(i,): v for (i,), v in e_tab.items()})
    delta_map = from_table(n, 1, 2, {(i, j, k): v for (i, j, k), v in d_raw.items()})
    eps_map = from_table(n, 1, 0, {(i,): v for (i,), v in eps_tab.items()})

    grading = doc.get("grading")
    if grading is not None:
        if (not isinstance(grading, list) or len(grading) != n
                or any(g not in (0, 1) for g in grading)):
            raise SchemaError("grading must be a 0/1 list of length dim", "grading")
    tau_field = doc.get("tau")
    if tau_field is None:
        raise SchemaError("missing field 'tau'", "tau")
    if tau_field == "flip":
        tau_map = graded_flip_map(tuple(grading)) if grading else flip_map(n)
    else:
        if grading is not None:
            raise SchemaError("grading is only meaningful with tau = \"flip\"",
                              "grading")
        tau_tab = _read_table(doc, "tau", 4, (n, n, n, n))
        tau_map = from_table(n, 2, 2,
                             {(i, j, k, l): v for (i, j, k, l), v in tau_tab.items()})
    tau_prime_map = None
    if "tau_prime" in doc:
        tp_tab = _read_table(doc, "tau_prime", 4, (n, n, n, n))
        tau_prime_map = from_table(
            n, 2, 2, {(i, j, k, l): v for (i, j, k, l), v in tp_tab.items()})

    expected = doc.get("expected")
    if expected is not None:
        if not isinstance(expected, dict):
            raise SchemaError("expected must be an object", "expected")
        unknown = set(expected) - _EXPECTED_KEYS
        if unknown:
            raise SchemaError(f"unknown expected keys {sorted(unknown)}", "expected")
        for k, v in expected.items():
            if not isinstance(v, int) or isinstance(v, bool):
                raise SchemaError(f"expected.{k} must be an integer", "expected")

    return WeakBraidedBimonad(
        alg=Algebra(n, m_map, e_map),
        coa=Coalgebra(n, delta_map, eps_map),
        yb=WeakYBPair.make(tau_map, tau_prime_map),
        name=name,
        expected=dict(expected) if expected else None,
    )


def load_module(path, bim: WeakBraidedBimonad):
    """Load a companion module file: carrier dim plus sparse h and theta tables."""
    from .hopfmodules import MixedBimodule

    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise SchemaError(f"not valid JSON: {exc}", str(path)) from None
    if not isinstance(doc, dict):
        raise SchemaError("module document must be a JSON object", "root")
    d = doc.get("dim")
    if not isinstance(d, int) or isinstance(d, bool) or d < 0:
        raise SchemaError("dim must be a nonnegative integer", "dim")
    n = bim.n
    h_tab = _read_table(doc, "h", 3, (n, d, d))
    th_tab = _read_table(doc, "theta", 3, (n, d, d))
    h_entries = {}
    for (i, j, k), v in h_tab.items():
        h_entries[(k, i * d + j)] = v
    th_entries = {}
    for (i, j, k), v in th_tab.items():
        th_entries[(i * d + j, k)] = v
    h = TensorMap((n, d), (d,), Mat.from_entries(d, n * d, h_entries))
    theta = TensorMap((d,), (n, d), Mat.from_entries(n * d, d, th_entries))
    return MixedBimodule(dim=d, h=h, theta=theta, name=doc.get("name", ""))


def save_module(mod, bim: WeakBraidedBimonad, path) -> str:
    n, d = bim.n, mod.dim
    h_rows = []
    for k in range(d):
        for col in range(n * d):
            v = mod.h.mat.data[k][col]
            if v != 0:
                h_rows.append([col // d, col % d, k, str(Fraction(v))])
    th_rows = []
    for row in range(n * d):
        for k in range(d):
            v = mod.theta.mat.data[row][k]
            if v != 0:
                th_rows.append([row // d, row % d, k, str(Fraction(v))])
    h_rows.sort(key=lambda r: r[:-1])
    th_rows.sort(key=lambda r: r[:-1])
    doc = {"name": mod.name or "module", "dim": d, "h": h_rows, "theta": th_rows}
    text = json.dumps(doc, sort_keys=True, indent=2) + "\n"
    Path(path).write_text(text, encoding="utf-8")
    return text
