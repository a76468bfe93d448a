from pathlib import Path

from posets.exceptions import PosetError
from posets.management.base import PosetCommand
from posets.services.catalog import CATALOG, generate
from posets.utils.documents import document_to_json, serialize_poset


class Command(PosetCommand):
    help = "Generate a catalog space, e.g. 'gen P3323' or 'gen Xnk 5 3'."
    takes_file = False

    def add_arguments(self, parser):
        parser.add_argument("name", help="catalog id; one of " + ", ".join(CATALOG))
        parser.add_argument("params", nargs="*", help="integer parameters")
        parser.add_argument("-o", "--output", help="write to this file instead of stdout")
        parser.add_argument("--format", choices=["text", "json"], default="text")

    def run(self, doc, **options):
        generated = generate(options["name"], *options["params"])
        if options["format"] == "json":
            text = document_to_json(generated)
        else:
            text = serialize_poset(generated)
        if not options["output"]:
            self.stdout.write(text, ending="")
            return
        path = Path(options["output"])
        try:
            with open(path, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
        except OSError as e:
            raise PosetError(f"Cannot write {path}: {e.strerror}") from None
        self.stdout.write(self.style.SUCCESS(f"Wrote {generated.name} ({len(generated.elements)} elements) to {path}"))
