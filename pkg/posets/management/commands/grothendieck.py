from django.core.management.base import CommandError

from posets.management.base import PosetCommand
from posets.utils.grothendieck import build_integral, verify_integral_identities


class Command(PosetCommand):
    help = "Build the Grothendieck construction over U(X) and check its identities with X."

    def run(self, doc, **options):
        X = doc.to_poset()
        integral = build_integral(X)
        self.stdout.write(self.style.MIGRATE_HEADING(f"integral: {integral.poset.n} elements"))
        self.write_lines(integral.poset.labels)
        self.stdout.write(f"covers ({len(integral.poset.covers)}):")
        self.write_lines(f"  {low} < {high}" for low, high in integral.poset.cover_labels)

        report = verify_integral_identities(X)
        self.stdout.write(self.style.MIGRATE_HEADING("identities"))
        self.write_lines(report.lines())
        if not report.holds:
            raise CommandError("some identities failed", returncode=1)
        self.stdout.write(self.style.SUCCESS("all identities hold"))
