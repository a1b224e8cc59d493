"""Structural checks on built reduction instances, by enumeration and exact arithmetic only."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction

from ..cycles import cycle_weight, enumerate_cycles
from ..instance import ExchangeInstance, remove_nodes
from .reductions import parse_label
from .sources import satisfying_assignments

KINDS = ("weightedL", "weighted3", "size3")


class MissingLabelsError(ValueError):
    pass


@dataclass
class GadgetReport:
    kind: str
    gadgets_checked: int = 0
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def summary(self) -> str:
        status = "ok" if self.ok else f"{len(self.violations)} violation(s)"
        lines = [f"{self.kind}: {self.gadgets_checked} gadgets checked, {status}"]
        lines.extend(f"  - {v}" for v in self.violations)
        return "\n".join(lines)


def _induced(inst: ExchangeInstance, nodes):
    """Induced subgraph plus new->old index map."""
    keep = set(nodes)
    sub, index = remove_nodes(inst, [v for v in range(inst.n) if v not in keep])
    back = {new: old for old, new in index.items()}
    return sub, back


def _cycles_in(inst: ExchangeInstance, nodes, max_len):
    sub, back = _induced(inst, nodes)
    return [tuple(back[v] for v in c) for c in enumerate_cycles(sub, max_len)]


def _max_packing_weight(inst: ExchangeInstance, cycles) -> Fraction:
    """Brute-force best vertex-disjoint subset weight (cycles are few here)."""
    weights = [cycle_weight(inst, c) for c in cycles]
    sets = [frozenset(c) for c in cycles]
    best = Fraction(0)

    def go(i: int, used: frozenset, total: Fraction) -> None:
        nonlocal best
        if i == len(cycles):
            best = max(best, total)
            return
        if not (sets[i] & used):
            go(i + 1, used | sets[i], total + weights[i])
        go(i + 1, used, total)

    go(0, frozenset(), Fraction(0))
    return best


def _labels(inst: ExchangeInstance) -> list[dict[str, str]]:
    missing = [v for v in range(inst.n) if v not in inst.labels]
    if missing:
        raise MissingLabelsError(f"{len(missing)} nodes lack role labels (first: {missing[0]})")
    return [parse_label(inst.labels[v]) for v in range(inst.n)]


def _check_equations(inst, labels, report: GadgetReport) -> None:
    groups: dict[int, list[int]] = defaultdict(list)
    for v, lab in enumerate(labels):
        if "eq" in lab:
            groups[int(lab["eq"])].append(v)
    for eq, nodes in sorted(groups.items()):
        report.gadgets_checked += 1
        tag = f"equation {eq}"
        role = {v: (int(labels[v]["var"]), int(labels[v]["side"])) for v in nodes}
        variables = sorted({var for var, _ in role.values()})
        rhs_values = {int(labels[v]["rhs"]) for v in nodes}
        if len(nodes) != 6 or len(variables) != 3 or len(set(role.values())) != 6 or len(rhs_values) != 1:
            report.violations.append(f"{tag}: expected 6 nodes over 3 variables x 2 sides, got {len(nodes)}")
            continue
        rhs = rhs_values.pop()
        cycles = _cycles_in(inst, nodes, None)
        tri = [c for c in cycles if len(c) == 3]
        long = [c for c in cycles if len(c) > 3]
        if len(tri) != 4:
            report.violations.append(f"{tag}: {len(tri)} three-cycles, expected 4")
        for c in tri:
            w = cycle_weight(inst, c)
            if w != 1:
                report.violations.append(f"{tag}: three-cycle {c} weighs {w}, expected 1")
        assignments = []
        for c in tri:
            by_var = dict(role[v] for v in c)
            if sorted(by_var) != variables:
                report.violations.append(f"{tag}: three-cycle {c} does not span the three variables")
                continue
            assignments.append(tuple(by_var[x] for x in variables))
        if sorted(assignments) != sorted(satisfying_assignments(rhs)):
            report.violations.append(f"{tag}: three-cycles {sorted(assignments)} are not the satisfying assignments")
        packed = _max_packing_weight(inst, long)
        if packed > 2:
            report.violations.append(f"{tag}: cycles longer than 3 pack to weight {packed} > 2")


def _check_weightedL_vars(inst, labels, report: GadgetReport) -> None:
    supers = {int(lab["var"]): v for v, lab in enumerate(labels) if lab.get("role") == "super"}
    rows: dict[int, list[int]] = defaultdict(list)
    for v, lab in enumerate(labels):
        if lab.get("role") == "row":
            rows[int(lab["var"])].append(v)
    m_values = {len(r) // 2 for r in rows.values()}
    if len(m_values) > 1:
        report.violations.append(f"variables disagree on the number of rows: {sorted(m_values)}")
        return
    m = m_values.pop() if m_values else 0
    if inst.n != (2 * m + 1) * len(supers):
        report.violations.append(f"instance has {inst.n} nodes, expected (2m+1)n = {(2 * m + 1) * len(supers)}")
    for var, s in sorted(supers.items()):
        report.gadgets_checked += 1
        tag = f"variable {var}"
        members = [s] + rows[var]
        through = [c for c in _cycles_in(inst, members, m + 1) if s in c]
        if len(through) != 2:
            report.violations.append(f"{tag}: {len(through)} variable cycles, expected 2")
            continue
        occ = sum(1 for v in rows[var] if "eq" in labels[v] and labels[v]["side"] == "0")
        sides = []
        for c in through:
            side_set = {labels[v]["side"] for v in c if v != s}
            sides.append(side_set)
            w = cycle_weight(inst, c)
            if w != 2 * occ:
                report.violations.append(f"{tag}: variable cycle weighs {w}, expected 2*m_i = {2 * occ}")
        if sorted(map(sorted, sides)) != [["0"], ["1"]]:
            report.violations.append(f"{tag}: variable cycles do not each run down one column")


def _check_weighted3_vars(inst, labels, report: GadgetReport) -> None:
    members: dict[int, list[int]] = defaultdict(list)
    for v, lab in enumerate(labels):
        if lab.get("gadget") == "var":
            members[int(lab["var"])].append(v)
    for var, nodes in sorted(members.items()):
        report.gadgets_checked += 1
        tag = f"variable {var}"
        occ = sum(1 for v in nodes if labels[v]["role"] == "thin" and "eq" in labels[v])
        cycles = _cycles_in(inst, nodes, 3)
        thin = [c for c in cycles if any(labels[v]["role"] == "thin" for v in c)]
        thick = [c for c in cycles if any(labels[v]["role"] == "thick" for v in c)]
        if len(thin) + len(thick) != len(cycles) or set(thin) & set(thick):
            report.violations.append(f"{tag}: cycles not split cleanly into thin and thick")
        segments = sum(1 for v in nodes if labels[v]["role"] == "thin")
        if len(thin) != segments or len(thick) != segments:
            report.violations.append(f"{tag}: {len(thin)} thin / {len(thick)} thick cycles, expected {segments} each")
        for name, group in (("thin", thin), ("thick", thick)):
            if len({v for c in group for v in c}) != sum(len(c) for c in group):
                report.violations.append(f"{tag}: {name} cycles overlap")
            total = sum((cycle_weight(inst, c) for c in group), Fraction(0))
            if total != 2 * occ:
                report.violations.append(f"{tag}: {name} total {total}, expected 2*m_i = {2 * occ}")
        for a in thin:
            if not any(set(a) & set(b) for b in thick):
                report.violations.append(f"{tag}: thin cycle {a} meets no thick cycle")


def _check_triples(inst, labels, report: GadgetReport) -> None:
    internal: dict[int, dict[tuple[str, str], int]] = defaultdict(dict)
    for v, lab in enumerate(labels):
        if lab.get("gadget") == "triple":
            internal[int(lab["triple"])][(lab["role"], lab["axis"])] = v
    owner = {v: t for t, nodes in internal.items() for v in nodes.values()}
    touching: dict[int, list[tuple[int, ...]]] = defaultdict(list)
    for c in enumerate_cycles(inst, 3):
        for t in sorted({owner[v] for v in c if v in owner}):
            touching[t].append(c)
    for t, nodes in sorted(internal.items()):
        report.gadgets_checked += 1
        tag = f"triple {t}"
        cycles = touching[t]
        if len(cycles) != 7:
            report.violations.append(f"{tag}: {len(cycles)} cycles, expected 7")
        inner = set(nodes.values())
        elems = {int(labels[nodes[("p", ax)]]["elem"]) for ax in "xyz"}
        down = [c for c in cycles if set(c) - inner]
        upper_sets = [frozenset(nodes[(r, ax)] for r in "pqr") for ax in "xyz"]
        triple_set = frozenset(nodes[("r", ax)] for ax in "xyz")
        upper = [c for c in cycles if frozenset(c) in upper_sets]
        top = [c for c in cycles if frozenset(c) == triple_set]
        if len(down) != 3 or len(upper) != 3 or len(top) != 1:
            report.violations.append(
                f"{tag}: role partition {len(down)}/{len(upper)}/{len(top)}, expected 3/3/1"
            )
            continue
        down_elems = [set(c) - inner for c in down]
        if any(len(d) != 1 for d in down_elems) or set().union(*down_elems) != elems:
            report.violations.append(f"{tag}: down cycles do not each use one distinct element node")
        if len(set().union(*map(set, upper))) != 9:
            report.violations.append(f"{tag}: upper cycles are not pairwise disjoint")
        if any(set(top[0]) & set(d) for d in down):
            report.violations.append(f"{tag}: triple cycle meets a down cycle")
        if not all(set(top[0]) & set(u) for u in upper):
            report.violations.append(f"{tag}: triple cycle misses an upper cycle")


def verify_gadgets(inst: ExchangeInstance, kind: str) -> GadgetReport:
    if kind not in KINDS:
        raise ValueError(f"unknown gadget kind {kind!r}; expected one of {KINDS}")
    labels = _labels(inst)
    report = GadgetReport(kind)
    if kind == "weightedL":
        _check_weightedL_vars(inst, labels, report)
        _check_equations(inst, labels, report)
    elif kind == "weighted3":
        _check_weighted3_vars(inst, labels, report)
        _check_equations(inst, labels, report)
    else:
        _check_triples(inst, labels, report)
    return report
