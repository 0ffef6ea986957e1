"""Exact rational linear programming and the angle-feasibility program.

The simplex runs on a sparse tableau over ``gmpy2.mpq`` (exact rationals,
much cheaper than :class:`fractions.Fraction`); everything that leaves this
module is converted back to ``Fraction``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Mapping, Sequence

from gmpy2 import mpq

from .families import SupportFamily, cond_i_ii, mask_of, popcount, set_of, Verdict, PASS, FAIL, NOT_EVALUATED

EQ, GE = "=", ">="
DEGENERATE_SWITCH = 50


@dataclass(frozen=True)
class Constraint:
    coeffs: Mapping[int, Fraction]  # variable index -> coefficient, zeros omitted
    relation: str
    rhs: Fraction
    label: str = ""

    def lhs(self, x: Sequence) -> Fraction:
        return sum((c * x[j] for j, c in self.coeffs.items()), Fraction(0))

    def satisfied(self, x: Sequence) -> bool:
        v = self.lhs(x)
        return v == self.rhs if self.relation == EQ else v >= self.rhs


@dataclass
class LinearProgram:
    """``maximize objective . x`` subject to the constraints and ``x >= 0``."""

    variables: list[str] = field(default_factory=list)
    constraints: list[Constraint] = field(default_factory=list)
    objective: dict[int, Fraction] = field(default_factory=dict)

    def var(self, name: str) -> int:
        self.variables.append(name)
        return len(self.variables) - 1

    def add(self, coeffs: Mapping[int, object], relation: str, rhs, label: str = "") -> None:
        if relation == "<=":
            coeffs = {j: -Fraction(c) for j, c in coeffs.items()}
            relation, rhs = GE, -Fraction(rhs)
        if relation not in (EQ, GE):
            raise ValueError(f"unknown relation {relation!r}")
        clean = {}
        for j, c in coeffs.items():
            c = Fraction(c)
            if c:
                clean[j] = clean.get(j, Fraction(0)) + c
        self.constraints.append(Constraint({j: c for j, c in clean.items() if c}, relation, Fraction(rhs), label))

    def maximize(self, coeffs: Mapping[int, object]) -> None:
        self.objective = {j: Fraction(c) for j, c in coeffs.items() if c}

    def value(self, x: Sequence) -> Fraction:
        return sum((c * x[j] for j, c in self.objective.items()), Fraction(0))

    def feasible(self, x: Sequence) -> bool:
        return all(v >= 0 for v in x) and all(c.satisfied(x) for c in self.constraints)

    @property
    def num_vars(self) -> int:
        return len(self.variables)


@dataclass(frozen=True)
class LpOutcome:
    status: str  # "optimal" | "infeasible" | "unbounded"
    value: Fraction | None = None
    point: tuple[Fraction, ...] | None = None
    ray: tuple[Fraction, ...] | None = None
    certificate: tuple[Fraction, ...] | None = None  # Farkas multipliers, one per constraint
    pivots: int = 0


def check_farkas(p: LinearProgram, y: Sequence[Fraction]) -> bool:
    """``y >= 0`` on inequality rows, ``y^T A <= 0`` and ``y^T b > 0``: then
    ``0 >= y^T A x >= y^T b > 0`` for every feasible ``x``, a contradiction."""
    if len(y) != len(p.constraints):
        return False
    comb = [Fraction(0)] * p.num_vars
    rhs = Fraction(0)
    for yi, c in zip(y, p.constraints):
        if c.relation == GE and yi < 0:
            return False
        for j, a in c.coeffs.items():
            comb[j] += yi * a
        rhs += yi * c.rhs
    return all(v <= 0 for v in comb) and rhs > 0


def check_ray(p: LinearProgram, d: Sequence[Fraction]) -> bool:
    if any(v < 0 for v in d) or p.value(d) <= 0:
        return False
    for c in p.constraints:
        v = c.lhs(d)
        if (c.relation == EQ and v != 0) or (c.relation == GE and v < 0):
            return False
    return True


class _Tableau:
    """Sparse simplex tableau: ``rows[i]`` maps column -> coefficient of the
    row ``x_basis[i] + sum_j a_ij x_j = rhs[i]``."""

    def __init__(self, rows, rhs, basis, ncols):
        self.rows = rows
        self.rhs = rhs
        self.basis = basis
        self.ncols = ncols
        self.pivots = 0

    def set_objective(self, cost: dict[int, mpq]):
        basic = set(self.basis)
        d = {j: v for j, v in cost.items() if j not in basic}
        val = mpq(0)
        for i, b in enumerate(self.basis):
            cb = cost.get(b)
            if cb:
                for j, a in self.rows[i].items():
                    d[j] = d.get(j, mpq(0)) - cb * a
                val += cb * self.rhs[i]
        self.d = {j: v for j, v in d.items() if v}
        self.obj = val

    def pivot(self, r: int, q: int):
        """Bring column q into the basis in place of row r's basic variable."""
        old = self.rows[r]
        inv = 1 / old[q]
        row = {j: a * inv for j, a in old.items() if j != q}
        row[self.basis[r]] = inv
        br = self.rhs[r] * inv
        self.rows[r] = row
        self.rhs[r] = br
        for i, other in enumerate(self.rows):
            if i == r:
                continue
            f = other.pop(q, None)
            if f is None:
                continue
            for j, a in row.items():
                v = other.get(j, 0) - f * a
                if v:
                    other[j] = v
                else:
                    other.pop(j, None)
            self.rhs[i] -= f * br
        f = self.d.pop(q, None)
        if f is not None:
            d = self.d
            for j, a in row.items():
                v = d.get(j, 0) - f * a
                if v:
                    d[j] = v
                else:
                    d.pop(j, None)
            self.obj += f * br
        self.basis[r] = q
        self.pivots += 1

    def run(self, allowed: set[int] | None = None, rule: str = "bland"):
        """Maximize; returns None at optimum or the entering column of an
        unbounded direction.

        ``rule="dantzig"`` prices by largest reduced cost but switches to
        Bland's rule after a run of degenerate pivots, which rules out
        cycling; ``rule="bland"`` uses Bland's rule throughout.
        """
        degenerate = 0
        while True:
            cands = [(j, v) for j, v in self.d.items() if v > 0 and (allowed is None or j in allowed)]
            if not cands:
                return None
            if rule == "bland" or degenerate >= DEGENERATE_SWITCH:
                q = min(j for j, _ in cands)
            else:
                q = max(cands, key=lambda jv: (jv[1], -jv[0]))[0]
            best = None
            for i, row in enumerate(self.rows):
                a = row.get(q)
                if a is not None and a > 0:
                    key = (self.rhs[i] / a, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return q
            degenerate = degenerate + 1 if best[0][0] == 0 else 0
            self.pivot(best[1], q)


def _simplex_core(nvars, rows, objective, rule="bland"):
    """Two-phase simplex on ``max objective.x`` over ``(coeffs, relation, rhs)``
    rows with mpq data.  Returns ``(status, point, ray, certificate, pivots)``
    with vectors over the ``nvars`` structural columns."""
    m = len(rows)
    slack_col: list = []
    trows: list[dict[int, mpq]] = []
    rhs: list[mpq] = []
    basis: list = []
    sign: list[int] = []
    unit_col: list[int] = []
    col = nvars
    artificial: list[int] = []
    for coeffs, rel, b in rows:
        s = -1 if b < 0 else 1
        row = {j: s * a for j, a in coeffs.items()}
        basis_col = None
        slack_col.append(col if rel == GE else None)
        if rel == GE:
            row[col] = mpq(-s)
            if s == -1:
                # (-a) x + s = -b with -b > 0: the slack starts basic
                basis_col = col
            col += 1
        trows.append(row)
        rhs.append(s * b)
        sign.append(s)
        basis.append(basis_col)
    for i in range(m):
        if basis[i] is None:
            trows[i][col] = mpq(1)
            basis[i] = col
            artificial.append(col)
            col += 1
        unit_col.append(basis[i])
    for i in range(m):
        trows[i].pop(basis[i])
    tab = _Tableau(trows, rhs, basis, col)
    art = set(artificial)
    if artificial:
        tab.set_objective({a: mpq(-1) for a in artificial})
        tab.run(rule=rule)
        if tab.obj < 0:
            # duals y_i = c(unit_i) - reduced cost(unit_i); certificate z = -sign*y
            cert = []
            for i in range(m):
                u = unit_col[i]
                cu = mpq(-1) if u in art else mpq(0)
                cert.append(-sign[i] * (cu - _reduced(tab, u)))
            return "infeasible", None, None, cert, tab.pivots, None
        # drive zero-level artificials out of the basis
        keep = []
        for i in range(len(tab.rows)):
            if tab.basis[i] in art:
                q = min((j for j in tab.rows[i] if j not in art), default=None)
                if q is None:
                    continue  # redundant row
                tab.pivot(i, q)
            keep.append(i)
        tab.rows = [tab.rows[i] for i in keep]
        tab.rhs = [tab.rhs[i] for i in keep]
        tab.basis = [tab.basis[i] for i in keep]
        for row in tab.rows:
            for a in art:
                row.pop(a, None)
    allowed = set(range(col)) - art
    tab.set_objective(dict(objective))
    q = tab.run(allowed, rule=rule)
    x = [mpq(0)] * col
    for i, b in enumerate(tab.basis):
        x[b] = tab.rhs[i]
    if q is not None:
        d = [mpq(0)] * col
        d[q] = mpq(1)
        for i, b in enumerate(tab.basis):
            a = tab.rows[i].get(q)
            if a is not None:
                d[b] = -a
        return "unbounded", x[:nvars], d[:nvars], None, tab.pivots, None
    # row multipliers (>= 0 on inequality rows) from slack reduced costs
    duals = [None if sc is None else -_reduced(tab, sc) for sc in slack_col]
    return "optimal", x[:nvars], None, None, tab.pivots, duals


def _solve_via_dual(nv, rows, obj, rule):
    """``max c.x, G x >= h, x >= 0`` through ``max h.y, -G^T y >= c, y >= 0``.

    A dual ray is a Farkas certificate for the primal; at a dual optimum the
    primal point is read off the dual's row multipliers.  Returns None when
    the dual is infeasible (primal unbounded or infeasible)."""
    drows = [dict() for _ in range(nv)]
    for i, (co, _, _) in enumerate(rows):
        for k, a in co.items():
            drows[k][i] = -a
    dual = [(drows[k], GE, obj.get(k, mpq(0))) for k in range(nv)]
    dobj = {i: h for i, (_, _, h) in enumerate(rows) if h}
    status, y, ray, _, piv, duals = _simplex_core(len(rows), dual, dobj, rule)
    if status == "unbounded":
        return "infeasible", None, None, ray, piv, None
    if status == "infeasible":
        return None
    x = duals
    for co, _, h in rows:
        if sum((a * x[k] for k, a in co.items()), mpq(0)) < h:
            raise AssertionError("dual-derived point violates a row")  # pragma: no cover
    if sum((c * x[k] for k, c in obj.items()), mpq(0)) != -sum((h * y[i] for i, h in dobj.items()), mpq(0)):
        raise AssertionError("duality gap at a dual optimum")  # pragma: no cover
    return "optimal", x, None, None, piv, None


def _axpy(target: dict, f, src: dict):
    for j, a in src.items():
        v = target.get(j, 0) - f * a
        if v:
            target[j] = v
        else:
            target.pop(j, None)


def _eliminate_equalities(p: LinearProgram):
    """Gauss-Jordan on the equality rows.

    Returns ``(pivots, conflict)``: ``pivots`` maps an eliminated column ``e``
    to ``(M, r, T)`` meaning ``x_e + M.x = r`` where ``M`` involves only
    surviving columns and ``T`` lists the multipliers of the original rows
    that produce this equation.  ``conflict`` is ``(T, b)`` for a derived
    equation ``0 = b != 0``, else None.  Later columns (convex weights) are
    preferred as pivots so the angle variables survive.
    """
    piv: dict[int, tuple[dict, mpq, dict]] = {}
    for idx, c in enumerate(p.constraints):
        if c.relation != EQ:
            continue
        r = {j: mpq(a) for j, a in c.coeffs.items()}
        b = mpq(c.rhs)
        T = {idx: mpq(1)}
        for e in [j for j in r if j in piv]:
            f = r.pop(e)
            M, pr, pT = piv[e]
            _axpy(r, f, M)
            b -= f * pr
            _axpy(T, f, pT)
        if not r:
            if b != 0:
                return piv, (T, b)
            continue
        q = max(r)
        inv = 1 / r.pop(q)
        M = {j: a * inv for j, a in r.items()}
        b *= inv
        T = {i: a * inv for i, a in T.items()}
        for e, (Me, re_, Te) in list(piv.items()):
            f = Me.pop(q, None)
            if f is not None:
                _axpy(Me, f, M)
                _axpy(Te, f, T)
                piv[e] = (Me, re_ - f * b, Te)
        piv[q] = (M, b, T)
    return piv, None


def simplex_solve(p: LinearProgram, presolve: bool = True, rule: str = "bland") -> LpOutcome:
    """Exact two-phase simplex for ``max c.x`` subject to the constraints and
    ``x >= 0``.

    With ``presolve`` the equality rows are eliminated first and the simplex
    runs on the remaining inequalities; points, rays and Farkas certificates
    are mapped back to the original program.  When the reduced program has
    many more rows than columns its dual is solved instead.  Pivoting follows
    Bland's rule; ``rule="dantzig"`` prices by largest reduced cost and falls
    back to Bland on long degenerate runs.
    """
    nx = p.num_vars
    m = len(p.constraints)
    if not presolve:
        rows = [({j: mpq(a) for j, a in c.coeffs.items()}, c.relation, mpq(c.rhs)) for c in p.constraints]
        status, x, d, y, piv, _ = _simplex_core(nx, rows, {j: mpq(c) for j, c in p.objective.items()}, rule)
        return _outcome(p, status, x, d, y, piv)
    elim, conflict = _eliminate_equalities(p)
    if conflict is not None:
        T, b = conflict
        s = 1 if b > 0 else -1
        cert = [mpq(0)] * m
        for i, a in T.items():
            cert[i] = s * a
        return _outcome(p, "infeasible", None, None, cert, 0)
    free = [j for j in range(nx) if j not in elim]
    pos = {j: k for k, j in enumerate(free)}

    def substitute(coeffs, b):
        out = {}
        for j, a in coeffs.items():
            a = mpq(a)
            if j in elim:
                M, r, _ = elim[j]
                for k, mk in M.items():
                    out[k] = out.get(k, 0) - a * mk
                b -= a * r
            else:
                out[j] = out.get(j, 0) + a
        return {pos[j]: v for j, v in out.items() if v}, b

    ge = [i for i, c in enumerate(p.constraints) if c.relation == GE]
    rows = [(*substitute(p.constraints[i].coeffs, mpq(p.constraints[i].rhs)), None) for i in ge]
    rows = [(co, GE, b) for co, b, _ in rows]
    order = sorted(elim)
    for e in order:
        M, r, _ = elim[e]
        rows.append(({pos[k]: -a for k, a in M.items()}, GE, -r))
    obj, const = substitute(p.objective, mpq(0))
    res = None
    if len(rows) > 2 * len(free):
        res = _solve_via_dual(len(free), rows, obj, rule)
    if res is None:
        res = _simplex_core(len(free), rows, obj, rule)
    status, xr, dr, yr, piv, _ = res

    def lift(v, homogeneous):
        full = [mpq(0)] * nx
        for j, k in pos.items():
            full[j] = v[k]
        for e, (M, r, _) in elim.items():
            val = mpq(0) if homogeneous else r
            for k, mk in M.items():
                val -= mk * full[k]
            full[e] = val
        return full

    if status == "infeasible":
        y = [mpq(0)] * m
        beta = {}
        for t, i in enumerate(ge):
            y[i] = yr[t]
            if yr[t]:
                for e, a in p.constraints[i].coeffs.items():
                    if e in elim:
                        beta[e] = beta.get(e, 0) + yr[t] * mpq(a)
        for t, e in enumerate(order):
            v = yr[len(ge) + t]
            if v:
                beta[e] = beta.get(e, 0) + v
        for e, bval in beta.items():
            for i, a in elim[e][2].items():
                y[i] -= bval * a
        return _outcome(p, status, None, None, y, piv)
    if status == "unbounded":
        return _outcome(p, status, lift(xr, False), lift(dr, True), None, piv)
    return _outcome(p, status, lift(xr, False), None, None, piv)


def _outcome(p, status, x, d, y, pivots) -> LpOutcome:
    conv = (lambda v: None if v is None else tuple(Fraction(int(a.numerator), int(a.denominator)) for a in v))
    point = conv(x)
    if status == "infeasible":
        return LpOutcome(status, certificate=conv(y), pivots=pivots)
    if status == "unbounded":
        return LpOutcome(status, point=point, ray=conv(d), pivots=pivots)
    return LpOutcome(status, value=p.value(point), point=point, pivots=pivots)


def _reduced(tab: _Tableau, j: int) -> mpq:
    if j in tab.basis:
        return mpq(0)
    return tab.d.get(j, mpq(0))


# ----------------------------------------------------------------- text dump

def _fmt(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def dump_lp(p: LinearProgram) -> str:
    """One constraint per line, ``c1*x1 + c2*x2 ... {=|>=} rhs``, after a
    ``vars:`` line fixing the variable order and the objective ``max: ...``."""
    def expr(coeffs):
        if not coeffs:
            return "0"
        parts = []
        for j in sorted(coeffs):
            c = coeffs[j]
            term = f"{_fmt(abs(c))}*{p.variables[j]}"
            if not parts:
                parts.append(term if c > 0 else f"-{term}")
            else:
                parts.append(("+ " if c > 0 else "- ") + term)
        return " ".join(parts)

    lines = ["vars: " + " ".join(p.variables), f"max: {expr(p.objective)}"]
    for c in p.constraints:
        lines.append(f"{expr(c.coeffs)} {c.relation} {_fmt(c.rhs)}")
    return "\n".join(lines) + "\n"


_TERM = re.compile(r"([+-]?)\s*([0-9]+(?:/[0-9]+)?)\*([A-Za-z_][\w\[\],.#{}-]*)")


def parse_lp_dump(text: str) -> LinearProgram:
    p = LinearProgram()
    index: dict[str, int] = {}

    def coeffs_of(s):
        out = {}
        s = s.strip()
        if s == "0":
            return out
        pos = 0
        for m in _TERM.finditer(s):
            if s[pos:m.start()].strip():
                raise ValueError(f"cannot parse {s!r}")
            pos = m.end()
            name = m.group(3)
            if name not in index:
                index[name] = p.var(name)
            c = Fraction(m.group(2)) * (-1 if m.group(1) == "-" else 1)
            out[index[name]] = out.get(index[name], Fraction(0)) + c
        if s[pos:].strip():
            raise ValueError(f"cannot parse {s!r}")
        return out

    lines = [ln for ln in text.splitlines() if ln.strip()]
    if lines and lines[0].startswith("vars:"):
        for name in lines.pop(0)[5:].split():
            index[name] = p.var(name)
    if not lines or not lines[0].startswith("max:"):
        raise ValueError("dump must start with 'max:'")
    obj = coeffs_of(lines[0][4:])
    for ln in lines[1:]:
        rel = ">=" if ">=" in ln else "="
        lhs, rhs = ln.split(rel)
        p.add(coeffs_of(lhs), rel, Fraction(rhs.strip()))
    p.maximize(obj)
    return p


# -------------------------------------------------------- cut polytope blocks

def cut_vertices(k: int) -> list[tuple[int, ...]]:
    """Sign vectors ``v in {+1,-1}^k`` with ``v_1 = +1``; the cut polytope
    vertices are the matrices ``v v^T``."""
    return [(1,) + rest for rest in product((1, -1), repeat=k - 1)]


@dataclass(frozen=True)
class CutPolytopeVertices:
    k: int
    vertices: tuple[tuple[tuple[int, ...], ...], ...]

    @classmethod
    def of_size(cls, k: int) -> "CutPolytopeVertices":
        return cls(k, tuple(tuple(tuple(a * b for b in v) for a in v) for v in cut_vertices(k)))


def add_cut_membership(p: LinearProgram, coupled: Mapping[tuple[int, int], int], k: int,
                       name: str, strict_var: int | None = None) -> list[int]:
    """Constrain the symmetric matrix with unit diagonal and off-diagonal
    entries ``B[a][b] = 2*x[coupled[a,b]] - 1`` to lie in the cut polytope of
    size ``k``, via convex weights on its vertices.  With ``strict_var`` each
    weight is bounded below by ``strict_var * 2**-k`` (interior membership)."""
    verts = cut_vertices(k)
    lam = [p.var(f"{name}#{t}") for t in range(len(verts))]
    for a, b in combinations(range(k), 2):
        coeffs = {coupled[a, b]: 2}
        for t, v in enumerate(verts):
            coeffs[lam[t]] = coeffs.get(lam[t], 0) - v[a] * v[b]
        p.add(coeffs, EQ, 1)
    p.add({l: 1 for l in lam}, EQ, 1)
    if strict_var is not None:
        for l in lam:
            p.add({l: 1, strict_var: -Fraction(1, 2**k)}, GE, 0)
    return lam


def mc_membership_lp(B: Sequence[Sequence[Fraction]], strict: bool = False) -> LinearProgram:
    """Feasibility program for ``B`` (unit diagonal) in the cut polytope, or
    in its interior when ``strict`` (then maximize the weight floor)."""
    k = len(B)
    p = LinearProgram()
    eps = p.var("eps") if strict else None
    verts = cut_vertices(k)
    lam = [p.var(f"lam#{t}") for t in range(len(verts))]
    for a, b in combinations(range(k), 2):
        p.add({lam[t]: v[a] * v[b] for t, v in enumerate(verts)}, EQ, Fraction(B[a][b]))
    p.add({l: 1 for l in lam}, EQ, 1)
    if strict:
        for l in lam:
            p.add({l: 1, eps: -1}, GE, 0)
        p.maximize({eps: 1})
    return p


# ----------------------------------------------------- the angle program

def alpha_name(i: int, j: int) -> str:
    return f"a{i}_{j}"


def build_condition_v_lp(f: SupportFamily) -> LinearProgram:
    """Angle program for a support family (indices 1-based).

    Variables: ``a{i}_{j}`` in [0, 1] for ``i < j``, the slack ``eps`` in
    [0, 1] standing in for all strict inequalities, and convex weights over
    cut-polytope vertices for each membership block.  Maximizes ``eps``.
    """
    if not cond_i_ii(f).passed:
        raise ValueError("family must satisfy the cardinality and antichain conditions")
    n = f.n
    p = LinearProgram()
    alpha = {}
    for i, j in combinations(range(1, n + 1), 2):
        alpha[i, j] = alpha[j, i] = p.var(alpha_name(i, j))
    eps = p.var("eps")
    for i, j in combinations(range(1, n + 1), 2):
        p.add({alpha[i, j]: 1}, "<=", 1, "bound")
    p.add({eps: 1}, "<=", 1, "bound")
    masks = f.masks
    mset = set(masks)
    pairs = [s for s in f.sets if len(s) == 2]
    # (a) pair supports have angle 0; (b) other pairs strictly positive
    for i, j in combinations(range(1, n + 1), 2):
        if (i, j) in pairs:
            p.add({alpha[i, j]: 1}, EQ, 0, "a")
        else:
            p.add({alpha[i, j]: 1, eps: -1}, GE, 0, "b")
    # (c) each support of size >= 3 lies in the cut polytope
    for s in f.sets:
        if len(s) >= 3:
            coupled = {(a, b): alpha[s[a], s[b]] for a in range(len(s)) for b in range(len(s)) if a != b}
            add_cut_membership(p, coupled, len(s), "c" + "".join(map(str, s)))
    # (d) strict subsets (size >= 2) of supports lie in the interior
    inner = set()
    for m in masks:
        sub = (m - 1) & m
        while sub:
            if popcount(sub) >= 2:
                inner.add(sub)
            sub = (sub - 1) & m
    for sub in sorted(inner, key=lambda x: (popcount(x), set_of(x))):
        s = set_of(sub)
        coupled = {(a, b): alpha[s[a], s[b]] for a in range(len(s)) for b in range(len(s)) if a != b}
        add_cut_membership(p, coupled, len(s), "d" + "".join(map(str, s)), strict_var=eps)
    # (e) triple supports sum to 1; (f) triples containing no support exceed 1
    for t in combinations(range(1, n + 1), 3):
        tm = mask_of(t)
        coeffs = {alpha[a, b]: 1 for a, b in combinations(t, 2)}
        if tm in mset:
            p.add(coeffs, EQ, 1, "e")
        elif not any(m & tm == m for m in masks):
            p.add({**coeffs, eps: -1}, GE, 1, "f")
    # (g) pair supports {i,j}: alpha_ik + alpha_jk >= 1
    for i, j in pairs:
        for k in range(1, n + 1):
            if k not in (i, j):
                p.add({alpha[i, k]: 1, alpha[j, k]: 1}, GE, 1, "g")
    # (h) every 5 indices: the 10 angles sum to at least 4
    for q in combinations(range(1, n + 1), 5):
        p.add({alpha[a, b]: 1 for a, b in combinations(q, 2)}, GE, 4, "h")
    p.maximize({eps: 1})
    return p


@dataclass(frozen=True)
class ConditionV:
    passed: bool
    outcome: LpOutcome
    program: LinearProgram

    def verdict(self) -> Verdict:
        o = self.outcome
        if o.status == "infeasible":
            w = {"status": "infeasible", "farkas": [_fmt(v) for v in o.certificate]}
        else:
            w = {"status": o.status, "eps": _fmt(o.value),
                 "alpha": {name: _fmt(v) for name, v in zip(self.program.variables, o.point)
                           if name.startswith("a")}}
        return Verdict(PASS if self.passed else FAIL, w)


def holds_condition_v(f: SupportFamily) -> ConditionV:
    """The angle system admits a solution with every strict inequality
    strict, i.e. the maximal slack is positive."""
    p = build_condition_v_lp(f)
    out = simplex_solve(p)
    return ConditionV(out.status == "optimal" and out.value > 0, out, p)


def cond_v(f: SupportFamily) -> Verdict:
    if not cond_i_ii(f).passed:
        return Verdict(NOT_EVALUATED)
    return holds_condition_v(f).verdict()
