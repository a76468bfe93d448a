import json
import tempfile
from pathlib import Path

from django.test import SimpleTestCase

from posets.exceptions import CycleError, DocumentSyntaxError, PosetError, UnknownElementError
from posets.services import catalog
from posets.utils.cconstruction import c_space
from posets.utils.documents import (
    PosetDocument,
    document_from_json,
    document_to_json,
    load_document,
    parse_poset,
    serialize_poset,
)
from posets.utils.dot import emit_dot
from posets.utils.poset import build_poset, chain

EX_EASY = "elements 0 1 2 3 4\n0 < 2\n0 < 3\n0 < 4\n1 < 3\n1 < 4\n"


class ParseTests(SimpleTestCase):
    def test_ex_easy(self):
        doc = parse_poset(EX_EASY)
        self.assertEqual(doc.elements, ["0", "1", "2", "3", "4"])
        self.assertEqual(doc.to_poset(), catalog.load("ex-easy"))

    def test_singleton(self):
        self.assertEqual(parse_poset("elements a\n").to_poset().n, 1)

    def test_cycle(self):
        with self.assertRaises(CycleError):
            parse_poset("elements a b\na < b\nb < a\n")

    def test_metadata_and_comments(self):
        doc = parse_poset("# name: tiny\n# source: hand written\n# just a note\nelements a b\na < b\n")
        self.assertEqual(doc.name, "tiny")
        self.assertEqual(doc.metadata, {"source": "hand written"})

    def test_duplicate_covers_are_merged(self):
        doc = parse_poset("elements a b\na < b\na<b\n")
        self.assertEqual(doc.covers, [("a", "b")])

    def test_syntax_error_carries_line(self):
        with self.assertRaises(DocumentSyntaxError) as ctx:
            parse_poset("elements a b\na b\n")
        self.assertEqual(ctx.exception.line, 2)
        self.assertIn("line 2", str(ctx.exception))

    def test_missing_elements_line(self):
        with self.assertRaises(DocumentSyntaxError):
            parse_poset("a < b\n")
        with self.assertRaises(DocumentSyntaxError):
            parse_poset("# only comments\n")

    def test_unknown_element(self):
        with self.assertRaises(UnknownElementError):
            parse_poset("elements a\na < b\n")

    def test_label_starting_with_hash_is_refused(self):
        with self.assertRaises(DocumentSyntaxError) as ctx:
            parse_poset("elements #a b\n#a < b\n")
        self.assertEqual(ctx.exception.line, 1)
        with self.assertRaises(DocumentSyntaxError):
            serialize_poset(PosetDocument("", ["#a", "b"], [("#a", "b")]))

    def test_serialize_round_trip(self):
        doc = catalog.generate("P3323")
        text = serialize_poset(doc)
        self.assertTrue(text.endswith("\n"))
        self.assertNotIn("\r", text)
        again = parse_poset(text)
        self.assertEqual(again, doc)


class JsonTests(SimpleTestCase):
    def test_round_trip(self):
        doc = catalog.generate("Xnk", 4, 2)
        self.assertEqual(document_from_json(document_to_json(doc)), doc)

    def test_invalid_label(self):
        payload = {"name": "bad", "elements": ["a b"], "covers": []}
        with self.assertRaises(DocumentSyntaxError):
            document_from_json(json.dumps(payload))
        with self.assertRaises(DocumentSyntaxError):
            document_from_json(json.dumps({"elements": ["#a", "b"], "covers": [["#a", "b"]]}))

    def test_cover_with_unknown_element(self):
        payload = {"elements": ["a"], "covers": [["a", "z"]]}
        with self.assertRaises(DocumentSyntaxError):
            document_from_json(json.dumps(payload))

    def test_broken_json(self):
        with self.assertRaises(DocumentSyntaxError):
            document_from_json("{")

    def test_load_by_suffix(self):
        doc = catalog.generate("ex-easy")
        with tempfile.TemporaryDirectory() as tmp:
            text_path = Path(tmp) / "x.poset"
            json_path = Path(tmp) / "x.json"
            text_path.write_text(serialize_poset(doc), encoding="utf-8")
            json_path.write_text(document_to_json(doc), encoding="utf-8")
            self.assertEqual(load_document(text_path), load_document(json_path))

    def test_missing_file(self):
        with self.assertRaises(PosetError):
            load_document("/nonexistent/poset.txt")

    def test_from_poset(self):
        doc = PosetDocument.from_poset(chain(3), "chain")
        self.assertEqual(doc.covers, [("0", "1"), ("1", "2")])


class DotTests(SimpleTestCase):
    def test_singleton(self):
        text = emit_dot(build_poset(["a"], []))
        self.assertEqual(text.count("[label="), 1)
        self.assertNotIn("->", text)

    def test_chain_edges(self):
        text = emit_dot(chain(3))
        self.assertIn('"n0" -> "n1";', text)
        self.assertIn('"n1" -> "n2";', text)
        self.assertEqual(text.count("->"), 2)

    def test_c_space_of_ex_easy(self):
        text = emit_dot(c_space(catalog.load("ex-easy")), "C")
        self.assertTrue(text.startswith('digraph "C" {'))
        self.assertEqual(text.count("[label="), 9)
        self.assertEqual(text.count("->"), 13)
        self.assertIn('label="U: 0 1 3"', text)

    def test_deterministic(self):
        X = catalog.load("P3323")
        self.assertEqual(emit_dot(X), emit_dot(X))
