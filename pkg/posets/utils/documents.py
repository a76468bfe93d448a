"""
Poset documents: the line-oriented text format and its JSON mirror.

Text format::

    # name: ex-easy
    # source: any free-form note
    elements 0 1 2 3 4
    0 < 2
    1 < 3

``# key: value`` comment lines become metadata (``name`` is kept apart),
other comments are ignored. The first non-comment line declares the
elements; every later line declares one cover.
"""
import json
import logging
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Tuple

from posets.exceptions import DocumentSyntaxError, PosetError, UnknownElementError
from posets.serializers import PosetDocumentSerializer
from posets.utils.poset import FinitePoset, build_poset

logger = logging.getLogger(__name__)

META_LINE = re.compile(r"^#\s*([A-Za-z_][\w-]*)\s*:\s*(.*?)\s*$")


@dataclass
class PosetDocument:
    name: str = ""
    elements: List[str] = field(default_factory=list)
    covers: List[Tuple[str, str]] = field(default_factory=list)
    metadata: Dict[str, str] = field(default_factory=dict)

    def to_poset(self) -> FinitePoset:
        return build_poset(self.elements, self.covers)

    @classmethod
    def from_poset(cls, poset: FinitePoset, name: str = "", metadata=None) -> "PosetDocument":
        return cls(name, list(poset.labels), list(poset.cover_labels), dict(metadata or {}))


def _check_token(label: str, line=None):
    if "<" in label:
        raise DocumentSyntaxError(f"label {label!r} may not contain '<'", line)
    if label.startswith("#"):
        # a cover line starting with it would read as a comment
        raise DocumentSyntaxError(f"label {label!r} may not start with '#'", line)


def parse_poset(text: str) -> PosetDocument:
    """
    Parse the text format and validate it by building the poset.

    Raises:
        DocumentSyntaxError: malformed lines, with their line number.
        UnknownElementError: a cover names an undeclared element.
        CycleError: the covers do not describe a partial order.
    """
    doc = PosetDocument()
    declared = False
    seen_covers = set()
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            match = META_LINE.match(line)
            if match:
                key, value = match.groups()
                if key == "name":
                    doc.name = value
                else:
                    doc.metadata[key] = value
            continue
        if not declared:
            tokens = line.split()
            if tokens[0] != "elements":
                raise DocumentSyntaxError("expected 'elements <label>...'", number)
            for label in tokens[1:]:
                _check_token(label, number)
                if label in doc.elements:
                    raise DocumentSyntaxError(f"duplicate element {label!r}", number)
                doc.elements.append(label)
            declared = True
            continue
        parts = line.split("<")
        if len(parts) != 2:
            raise DocumentSyntaxError("expected '<label> < <label>'", number)
        low, high = parts[0].strip(), parts[1].strip()
        if not low or not high or len(low.split()) != 1 or len(high.split()) != 1:
            raise DocumentSyntaxError("expected '<label> < <label>'", number)
        for label in (low, high):
            if label not in doc.elements:
                raise UnknownElementError(f"line {number}: unknown element {label!r}")
        if (low, high) not in seen_covers:
            seen_covers.add((low, high))
            doc.covers.append((low, high))
    if not declared:
        raise DocumentSyntaxError("missing 'elements' line")
    doc.to_poset()
    return doc


def serialize_poset(doc: PosetDocument) -> str:
    for label in doc.elements:
        _check_token(label)
    lines = []
    if doc.name:
        lines.append(f"# name: {doc.name}")
    for key, value in doc.metadata.items():
        lines.append(f"# {key}: {value}")
    lines.append(" ".join(["elements", *doc.elements]))
    lines.extend(f"{low} < {high}" for low, high in doc.covers)
    return "\n".join(lines) + "\n"


# ----------------------------------------------------------
# JSON mirror
# ----------------------------------------------------------
def document_to_json(doc: PosetDocument) -> str:
    payload = {
        "name": doc.name,
        "elements": list(doc.elements),
        "covers": [[low, high] for low, high in doc.covers],
        "metadata": dict(doc.metadata),
    }
    return json.dumps(payload, indent=2) + "\n"


def document_from_json(text: str) -> PosetDocument:
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as e:
        raise DocumentSyntaxError(f"invalid JSON: {e.msg}", e.lineno) from None
    serializer = PosetDocumentSerializer(data=payload)
    if not serializer.is_valid():
        raise DocumentSyntaxError(f"invalid poset document: {dict(serializer.errors)}")
    data = serializer.validated_data
    doc = PosetDocument(
        data.get("name", ""),
        list(data["elements"]),
        list(dict.fromkeys(tuple(pair) for pair in data.get("covers", []))),
        dict(data.get("metadata", {})),
    )
    doc.to_poset()
    return doc


def load_document(path) -> PosetDocument:
    """Read a poset file; ``.json`` files are read as the JSON mirror."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise PosetError(f"Cannot read {path}: {e.strerror}") from None
    logger.debug(f"loading poset document {path}")
    if path.suffix.lower() == ".json":
        return document_from_json(text)
    return parse_poset(text)
