import json

from posets.management.base import PosetCommand
from posets.utils.homotopy import core_with_removals, find_beat_points


class Command(PosetCommand):
    help = "Summarise a finite poset: elements, covers, extremes, beat points and contractibility."

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument("--json", action="store_true", help="print the summary as JSON")

    def run(self, doc, **options):
        X = doc.to_poset()
        reduced, removed = core_with_removals(X)
        summary = {
            "name": doc.name,
            "elements": list(X.labels),
            "covers": [list(pair) for pair in X.cover_labels],
            "maximal": list(X.labels_of(X.maximal_mask)),
            "minimal": list(X.labels_of(X.minimal_mask)),
            "connected": X.is_connected(),
            "beat_points": [
                {"element": r.element, "kind": r.kind, "witness": r.witness} for r in find_beat_points(X)
            ],
            "core_size": reduced.n,
            "contractible": X.n > 0 and reduced.n == 1,
            "removed": [str(r) for r in removed],
        }
        if options["json"]:
            self.stdout.write(json.dumps(summary, indent=2))
            return

        title = doc.name or options["file"]
        self.stdout.write(self.style.MIGRATE_HEADING(title))
        self.write_lines([
            f"elements ({X.n}): {' '.join(X.labels)}",
            f"covers ({len(X.covers)}): " + ", ".join(f"{a}<{b}" for a, b in X.cover_labels),
            f"maximal: {' '.join(summary['maximal'])}",
            f"minimal: {' '.join(summary['minimal'])}",
            f"connected: {'yes' if summary['connected'] else 'no'}",
        ])
        beats = find_beat_points(X)
        if beats:
            self.stdout.write("beat points:")
            self.write_lines(f"  {report}" for report in beats)
        else:
            self.stdout.write("beat points: none")
        self.stdout.write(f"core: {reduced.n} point(s)")
        if summary["contractible"]:
            self.stdout.write(self.style.SUCCESS("contractible"))
        else:
            self.stdout.write("not contractible")
