from posets.management.base import PosetCommand
from posets.utils.documents import PosetDocument, serialize_poset
from posets.utils.homotopy import core_with_removals


class Command(PosetCommand):
    help = "Print the core of a poset in the text format, with the removed beat points as comments."

    def run(self, doc, **options):
        reduced, removed = core_with_removals(doc.to_poset())
        for report in removed:
            self.stdout.write(f"# removed {report}")
        name = f"core of {doc.name}" if doc.name else "core"
        self.stdout.write(serialize_poset(PosetDocument.from_poset(reduced, name)), ending="")
