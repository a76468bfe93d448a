from django.core.management.base import CommandError

from posets.management.base import PosetCommand
from posets.services.fpp import METHODS, has_fpp


class Command(PosetCommand):
    help = "Decide the fixed point property. Exit 0 when it holds, 1 when a fixed-point-free map exists."

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument("--method", choices=METHODS, default="auto")
        parser.add_argument("--jobs", type=int, default=None, help="joblib workers for the exhaustive search")

    def run(self, doc, **options):
        X = doc.to_poset()
        certificate = has_fpp(X, options["method"], n_jobs=options["jobs"])
        self.stdout.write(certificate.render())
        if certificate.has_fpp:
            self.stdout.write(self.style.SUCCESS("has the fixed point property"))
            return
        raise CommandError("lacks the fixed point property", returncode=1)
