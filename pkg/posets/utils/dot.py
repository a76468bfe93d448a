"""
Graphviz DOT export of Hasse diagrams.

For example, after writing the output to ``c.gv``::

    dot -Tpng -O c.gv
"""
from typing import Union

from posets.utils.cconstruction import CSpace
from posets.utils.poset import FinitePoset


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def emit_dot(obj: Union[FinitePoset, CSpace], name: str = "P") -> str:
    """
    One node per element, one edge per cover drawn upwards, and one
    ``rank=same`` group per level. Output only depends on the input.
    """
    if isinstance(obj, CSpace):
        poset = obj.order
        labels = [f"{r.tag}: {' '.join(r.member_labels)}" for r in obj.regions]
        shape = "box"
    else:
        poset = obj
        labels = list(poset.labels)
        shape = "circle"

    lines = [f"digraph {_quote(name)} {{", "\trankdir=BT;", f"\tnode [shape={shape}];"]
    for i, label in enumerate(labels):
        lines.append(f'\t"n{i}" [label={_quote(label)}];')
    layers = {}
    for i, level in enumerate(poset.levels):
        layers.setdefault(level, []).append(i)
    for level in sorted(layers):
        members = " ".join(f'"n{i}";' for i in layers[level])
        lines.append(f"\t{{ rank=same; {members} }}")
    for low, high in poset.covers:
        lines.append(f'\t"n{low}" -> "n{high}";')
    lines.append("}")
    return "\n".join(lines) + "\n"
