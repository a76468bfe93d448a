from posets.management.base import PosetCommand
from posets.utils.cconstruction import C_SIDE, F_SIDE, U_SIDE, family
from posets.utils.dot import emit_dot

PARTS = {"u": U_SIDE, "f": F_SIDE, "c": C_SIDE}


class Command(PosetCommand):
    help = "List the regions of U(X), F(X) or C(X) with their order, or print them as DOT."

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument("--part", choices=sorted(PARTS), default="c", help="which family to build (default: c)")
        parser.add_argument("--dot", action="store_true", help="print the Hasse diagram in DOT syntax")

    def run(self, doc, **options):
        X = doc.to_poset()
        space = family(X, PARTS[options["part"]])
        if options["dot"]:
            self.stdout.write(emit_dot(space, f"{options['part'].upper()}({doc.name or 'X'})"), ending="")
            return

        self.stdout.write(self.style.MIGRATE_HEADING(f"{space.kind}(X): {len(space)} regions"))
        for region in space.regions:
            self.stdout.write(f"{region.label}")
        self.stdout.write(f"covers ({len(space.order.covers)}):")
        self.write_lines(f"  {low} < {high}" for low, high in space.order.cover_labels)
        if space.overlap:
            self.stdout.write(self.style.WARNING("U(X) and F(X) share a member set"))
