"""Hardness reductions rendered as concrete exchange instances.

Node labels are ``key=value`` tokens; :mod:`.verify` reads them back to
locate gadgets. Builders are deterministic: the same source always yields
the same node numbering, arc set and labels.
"""

from __future__ import annotations

from fractions import Fraction

from ..cycles import cycle_weight
from ..instance import ExchangeInstance
from .sources import Lin2System, TripleSystem, satisfying_assignments

THIRD = Fraction(1, 3)


def format_label(**fields) -> str:
    return " ".join(f"{k}={v}" for k, v in fields.items())


def parse_label(text: str) -> dict[str, str]:
    out = {}
    for token in text.split():
        key, _, value = token.partition("=")
        out[key] = value
    return out


def equation_arcs(nodes: dict[tuple[int, int], int], variables, rhs: int):
    """Arcs of one equation gadget.

    ``nodes[(var, value)]`` is the node freed when ``var`` takes ``value``.
    Each satisfying assignment closes one triangle. The six nodes with
    their triangles form an octahedron whose other four faces are the
    violating assignments; orienting two triangles one way and two the
    other leaves each violating face with a reversed edge, so exactly the
    four satisfying triangles are directed 3-cycles.
    """
    va, vb, vc = variables
    arcs = []
    for idx, (a, b, c) in enumerate(satisfying_assignments(rhs)):
        x, y, z = nodes[(va, a)], nodes[(vb, b)], nodes[(vc, c)]
        seq = (x, y, z) if idx < 2 else (x, z, y)
        arcs.extend((seq[t], seq[(t + 1) % 3], THIRD) for t in range(3))
    return arcs


def build_weightedL_reduction(sys: Lin2System) -> tuple[ExchangeInstance, int, Fraction]:
    """Weighted reduction with cycle bound L = m + 1.

    Each variable gets a super node and two columns of m row nodes (column
    ``side`` holds the nodes labelled ``x_i=side``). A variable cycle runs
    super -> rows 0..m-1 of one column -> super; the arc entering row j
    weighs 2 when x_i occurs in equation j, else 0. Row j of the three
    variables of equation j hosts that equation's gadget.

    Returns (instance, L, var_offset) where var_offset is the total weight
    of one variable cycle per variable, read off the built instance.
    """
    m, nv = sys.m, sys.n_vars
    if m < 2:
        raise ValueError("weighted-L reduction needs m >= 2 (L = m + 1 must host 3-cycles)")
    block = 2 * m + 1
    occurs = [set() for _ in range(nv)]
    for j, (a, b, c, _) in enumerate(sys.equations):
        for v in (a, b, c):
            if j in occurs[v]:
                raise ValueError(f"variable {v} repeated in equation {j}")
            occurs[v].add(j)

    def super_node(i: int) -> int:
        return i * block

    def row(i: int, side: int, j: int) -> int:
        return i * block + 1 + side * m + j

    arcs = []
    labels = {}
    eq_of = {}
    for j, (a, b, c, rhs) in enumerate(sys.equations):
        for v in (a, b, c):
            eq_of[(v, j)] = rhs
    for i in range(nv):
        s = super_node(i)
        labels[s] = format_label(gadget="var", role="super", var=i)
        for side in (0, 1):
            prev = s
            for j in range(m):
                node = row(i, side, j)
                fields = dict(gadget="var", role="row", var=i, side=side, row=j)
                if (i, j) in eq_of:
                    fields.update(eq=j, rhs=eq_of[(i, j)])
                labels[node] = format_label(**fields)
                arcs.append((prev, node, Fraction(2) if j in occurs[i] else Fraction(0)))
                prev = node
            arcs.append((prev, s, Fraction(0)))
    for j, (a, b, c, rhs) in enumerate(sys.equations):
        nodes = {(v, side): row(v, side, j) for v in (a, b, c) for side in (0, 1)}
        arcs.extend(equation_arcs(nodes, (a, b, c), rhs))
    inst = ExchangeInstance(nv * block, arcs, labels)
    offset = sum(
        (cycle_weight(inst, [super_node(i)] + [row(i, 0, j) for j in range(m)]) for i in range(nv)),
        Fraction(0),
    )
    return inst, m + 1, offset


def build_weighted3_reduction(sys: Lin2System) -> tuple[ExchangeInstance, int, Fraction]:
    """Weighted reduction with L = 3 for systems where each variable occurs <= 3 times.

    A variable with m_i occurrences gets r = max(m_i, 2) segments on a ring
    s_0 .. s_{2r-1}. Segment k carries a thin triangle (s_2k, s_2k+1, a_k)
    and a thick triangle (s_2k+1, s_2k+2, b_k); thin and thick triangles
    alternate around the ring, so a maximum disjoint choice is all-thin or
    all-thick. Every triangle weighs 2*m_i/r, giving each side total 2*m_i.
    For the k-th occurrence, a_k (covered by thin) carries the label
    ``x_i=0`` and b_k (covered by thick) the label ``x_i=1``; the equation
    gadgets are wired on these attachment nodes.
    """
    if sys.m < 1:
        raise ValueError("weighted-3 reduction needs m >= 1")
    occ = sys.occurrences()
    if any(c > 3 for c in occ):
        raise ValueError(f"occurrence bound violated: counts {occ}")
    where: list[list[tuple[int, int]]] = [[] for _ in range(sys.n_vars)]
    for j, (a, b, c, rhs) in enumerate(sys.equations):
        for v in (a, b, c):
            where[v].append((j, rhs))

    arcs = []
    labels = {}
    attach: dict[tuple[int, int, int], int] = {}  # (var, side, eq) -> node
    offset = Fraction(0)
    nxt = 0
    for i in range(sys.n_vars):
        mi = occ[i]
        if mi == 0:
            continue
        r = max(mi, 2)
        cw = Fraction(2 * mi, r)
        aw = cw / 3
        ring = list(range(nxt, nxt + 2 * r))
        thin = list(range(nxt + 2 * r, nxt + 3 * r))
        thick = list(range(nxt + 3 * r, nxt + 4 * r))
        nxt += 4 * r
        for p, node in enumerate(ring):
            labels[node] = format_label(gadget="var", role="ring", var=i, pos=p)
        for k in range(r):
            if k < mi:
                j, rhs = where[i][k]
            for side, node, role in ((0, thin[k], "thin"), (1, thick[k], "thick")):
                fields = dict(gadget="var", role=role, var=i, seg=k)
                if k < mi:
                    fields.update(side=side, eq=j, rhs=rhs)
                    attach[(i, side, j)] = node
                labels[node] = format_label(**fields)
            s0, s1, s2 = ring[2 * k], ring[2 * k + 1], ring[(2 * k + 2) % (2 * r)]
            arcs += [(s0, s1, aw), (s1, thin[k], aw), (thin[k], s0, aw)]
            arcs += [(s1, s2, aw), (s2, thick[k], aw), (thick[k], s1, aw)]
        offset += 2 * mi
    for j, (a, b, c, rhs) in enumerate(sys.equations):
        nodes = {(v, side): attach[(v, side, j)] for v in (a, b, c) for side in (0, 1)}
        arcs.extend(equation_arcs(nodes, (a, b, c), rhs))
    return ExchangeInstance(nxt, arcs, labels), 3, offset


def build_size3_reduction(sys: TripleSystem) -> tuple[ExchangeInstance, int]:
    """Unweighted reduction from 3-dimensional matching, L = 3.

    One node per element; per triple t and axis e in (x, y, z) three
    internal nodes p, q, r with the down cycle (element, p, q), the upper
    cycle (p, q, r), and across axes the triple cycle (r_x, r_y, r_z).
    All arcs have unit weight.
    """
    offsets = (0, sys.nx, sys.nx + sys.ny)
    n_elem = sys.nx + sys.ny + sys.nz
    labels = {}
    for axis, (name, count) in enumerate((("X", sys.nx), ("Y", sys.ny), ("Z", sys.nz))):
        for idx in range(count):
            labels[offsets[axis] + idx] = format_label(gadget="elem", set=name, idx=idx)
    arcs = []
    one = Fraction(1)
    for t, triple in enumerate(sys.triples):
        base = n_elem + 9 * t
        rs = []
        for axis, elem_idx in enumerate(triple):
            e = offsets[axis] + elem_idx
            p, q, r = base + 3 * axis, base + 3 * axis + 1, base + 3 * axis + 2
            for node, role in ((p, "p"), (q, "q"), (r, "r")):
                labels[node] = format_label(gadget="triple", triple=t, role=role, axis="xyz"[axis], elem=e)
            arcs += [(e, p, one), (p, q, one), (q, e, one), (q, r, one), (r, p, one)]
            rs.append(r)
        arcs += [(rs[0], rs[1], one), (rs[1], rs[2], one), (rs[2], rs[0], one)]
    return ExchangeInstance(n_elem + 9 * len(sys.triples), arcs, labels), 3
