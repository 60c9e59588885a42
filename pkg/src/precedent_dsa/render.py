"""Byte-stable text, DOT and structured renderings of every result type."""

from __future__ import annotations

import json
from typing import Iterable

from ._subsets import powerset
from .core import CaseBase, FactSituation, InconsistencyPair, ReasonSet, Side, format_names
from .dsa import DSAFramework, derivation_state
from .explain import DisputeNode, Explanation
from .reason import DecisionOutcome

ANNOTATE_MAX_CASES = 12


def dumps(document) -> str:
    return json.dumps(document, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


# -- inconsistencies and priority diagrams -------------------------------


def inconsistencies_text(pairs: Iterable[InconsistencyPair]) -> str:
    pairs = sorted(pairs)
    if not pairs:
        return "no inconsistencies\n"
    return "".join(f"{p}\n" for p in pairs)


def inconsistencies_document(pairs: Iterable[InconsistencyPair]) -> dict:
    return {
        "inconsistencies": [
            {"plaintiff": list(p.plaintiff), "defendant": list(p.defendant)} for p in sorted(pairs)
        ]
    }


def _node_id(rs: ReasonSet) -> str:
    return f"{rs.side.value}:{','.join(sorted(rs.members))}"


def _node_label(rs: ReasonSet) -> str:
    return str(rs) if rs.members else f"{{}} ({rs.side.value})"


def priority_diagram(
    cb: CaseBase, facts: FactSituation | None = None, sides: Iterable[Side] = tuple(Side)
) -> str:
    """DOT digraph of reason sets, arrows pointing from weaker to stronger.

    Each case contributes one edge from the losing side's facts to its rule
    premise, labelled by case id; same-side edges link displayed reason sets
    that are immediate strict supersets.  With ``facts``, each side in
    ``sides`` overlays the edge a new case ``<facts, _, side>`` would add.
    """
    nodes: dict[str, ReasonSet] = {}
    case_edges: dict[tuple[str, str], list[str]] = {}
    for c in cb.cases:
        weak, strong = c.facts.project(c.outcome.opposite), c.premise
        nodes[_node_id(weak)], nodes[_node_id(strong)] = weak, strong
        case_edges.setdefault((_node_id(weak), _node_id(strong)), []).append(c.id)
    overlays = []
    if facts is not None:
        for side in sides:
            weak, strong = facts.project(side.opposite), facts.project(side)
            nodes[_node_id(weak)], nodes[_node_id(strong)] = weak, strong
            overlays.append((side, _node_id(weak), _node_id(strong)))

    subset_edges = []
    for a in nodes.values():
        for b in nodes.values():
            if a.side is not b.side or not a.members < b.members:
                continue
            if not any(
                c.side is a.side and a.members < c.members < b.members for c in nodes.values()
            ):
                subset_edges.append((_node_id(a), _node_id(b)))

    lines = ["digraph priorities {", "  rankdir=BT;", "  node [shape=plaintext];"]
    for nid in sorted(nodes):
        lines.append(f"  {_quote(nid)} [label={_quote(_node_label(nodes[nid]))}];")
    for (a, b), ids in sorted(case_edges.items()):
        lines.append(f"  {_quote(a)} -> {_quote(b)} [label={_quote(', '.join(ids))}];")
    for a, b in sorted(subset_edges):
        lines.append(f"  {_quote(a)} -> {_quote(b)};")
    for side, a, b in overlays:
        style = "color=blue" if side is Side.PLAINTIFF else "color=red, style=dashed"
        label = f"<X, _, {side.value}>"
        lines.append(f"  {_quote(a)} -> {_quote(b)} [label={_quote(label)}, {style}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


# -- decisions -----------------------------------------------------------


def _witness_line(weak: ReasonSet, strong: ReasonSet, ids: tuple[str, ...]) -> str:
    return f"  {weak} < {strong}: {', '.join(ids) if ids else 'none'}"


def decision_text(outcome: DecisionOutcome, facts: FactSituation) -> str:
    lines = [str(outcome), f"facts: {facts}"]
    for side in (Side.PLAINTIFF, Side.DEFENDANT):
        lines.append(
            _witness_line(facts.project(side.opposite), facts.project(side), outcome.witnesses_for(side))
        )
    return "\n".join(lines) + "\n"


def decision_document(outcome: DecisionOutcome, facts: FactSituation) -> dict:
    return {
        "decision": "both permitted" if outcome.both_permitted else "obligated",
        "side": outcome.obligated.value if outcome.obligated else None,
        "facts": sorted(facts.members),
        "priorities": [
            {
                "weaker": sorted(facts.project(side.opposite).members),
                "stronger": sorted(facts.project(side).members),
                "witnesses": list(outcome.witnesses_for(side)),
            }
            for side in (Side.PLAINTIFF, Side.DEFENDANT)
        ],
    }


# -- frameworks ----------------------------------------------------------


def framework_notes(fw: DSAFramework) -> list[str]:
    """Remarks on sub-base maximality and on attacks from larger sub-bases."""
    notes = []
    cb = fw.case_base
    for arg in fw.arguments:
        if len(arg.sub_base) > ANNOTATE_MAX_CASES:
            continue
        smaller = [
            ids
            for ids in powerset(arg.sub_base)
            if ids < arg.sub_base and derivation_state(cb, arg.knowledge, ids) is arg.state
        ]
        minimal = [g for g in smaller if not any(o < g for o in smaller)]
        for ids in minimal:
            notes.append(
                f"note: {arg} keeps sub-base {format_names(arg.sub_base)}; "
                f"{format_names(ids)} is also conclusive for {arg.state} but not maximal"
            )
    for a, b in fw.sorted_attacks():
        if a.sub_base > b.sub_base:
            notes.append(f"note: attacker {a} has a strictly larger sub-base than {b}")
    return notes


def framework_text(fw: DSAFramework, annotate: bool = False) -> str:
    grounded = fw.grounded
    lines = [
        f"facts: {fw.facts}",
        f"arguments: {len(fw.arguments)} ({len(grounded)} in grounded extension)",
    ]
    for arg in fw.arguments:
        lines.append(f"  {'in ' if arg in grounded else 'out'}  {arg}")
    lines.append(f"attacks: {len(fw.attacks)}")
    for a, b in fw.sorted_attacks():
        lines.append(f"  {a} -> {b}")
    if annotate:
        lines.extend(framework_notes(fw))
    return "\n".join(lines) + "\n"


def framework_document(fw: DSAFramework, annotate: bool = False) -> dict:
    index = {arg: i for i, arg in enumerate(fw.arguments)}
    doc = {
        "facts": sorted(fw.facts.members),
        "arguments": [
            {"id": f"n{i}", **arg.to_dict(), "in_extension": arg in fw.grounded}
            for i, arg in enumerate(fw.arguments)
        ],
        "attacks": [[f"n{index[a]}", f"n{index[b]}"] for a, b in fw.sorted_attacks()],
    }
    if annotate:
        doc["notes"] = framework_notes(fw)
    return doc


def framework_dot(fw: DSAFramework) -> str:
    index = {arg: i for i, arg in enumerate(fw.arguments)}
    lines = ["digraph framework {", "  rankdir=BT;", "  node [shape=box];"]
    for arg, i in index.items():
        style = "solid" if arg in fw.grounded else "dashed"
        lines.append(f"  n{i} [label={_quote(str(arg))}, style={style}];")
    for a, b in fw.sorted_attacks():
        lines.append(f"  n{index[a]} -> n{index[b]};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# -- dispute trees -------------------------------------------------------


def tree_text(tree: DisputeNode, depth: int = 0) -> str:
    out = f"{'  ' * depth}{tree.role.value}: {tree.argument}\n"
    return out + "".join(tree_text(child, depth + 1) for child in tree.children)


def tree_document(tree: DisputeNode) -> dict:
    return {
        "role": tree.role.value,
        "argument": tree.argument.to_dict(),
        "children": [tree_document(c) for c in tree.children],
    }


def trees_dot(trees: Iterable[DisputeNode], name: str = "explanations") -> str:
    """One DOT digraph holding every tree; arrows run from attacker to attacked."""
    lines = [f"digraph {name} {{", "  rankdir=BT;", "  node [shape=box];"]
    counter = 0

    def emit(node: DisputeNode) -> str:
        nonlocal counter
        nid = f"t{counter}"
        counter += 1
        style = "solid" if node.role.value == "P" else "dashed"
        label = f"{node.role.value}: {node.argument}"
        lines.append(f"  {nid} [label={_quote(label)}, style={style}];")
        for child in node.children:
            lines.append(f"  {emit(child)} -> {nid};")
        return nid

    for tree in trees:
        emit(tree)
    lines.append("}")
    return "\n".join(lines) + "\n"


def explanations_text(side: Side, found: Iterable[Explanation]) -> str:
    found = list(found)
    if not found:
        return f"{side}: no explanations\n"
    out = [f"{side}: {len(found)} explanation(s)\n"]
    for i, e in enumerate(found, 1):
        out.append(f"explanation {i}, root {e.root}\n")
        out.append(tree_text(e.tree))
    return "".join(out)
