from django.core.management.base import CommandError

from posets.management.base import PosetCommand
from posets.services.reproduction import iter_acceptance_checks


class Command(PosetCommand):
    help = "Run the reproduction suite over the catalog spaces and random posets. Exit 0 iff every check passes."
    takes_file = False

    def add_arguments(self, parser):
        parser.add_argument("--seed", type=int, default=None, help="seed of the random property suite")
        parser.add_argument("--samples", type=int, default=None, help="number of random posets")

    def run(self, doc, **options):
        failed = 0
        total = 0
        for result in iter_acceptance_checks(options["seed"], options["samples"]):
            total += 1
            status = self.style.SUCCESS("PASS") if result.passed else self.style.ERROR("FAIL")
            self.stdout.write(f"{status} {result.name} [{result.seconds:.2f}s] {result.detail}")
            if not result.passed:
                failed += 1
        if failed:
            raise CommandError(f"{failed} of {total} checks failed", returncode=1)
        self.stdout.write(self.style.SUCCESS(f"All {total} checks passed"))
