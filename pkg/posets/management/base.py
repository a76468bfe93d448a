import logging

from django.core.management.base import BaseCommand, CommandError

from posets.exceptions import PosetError
from posets.utils.documents import PosetDocument, load_document

logger = logging.getLogger(__name__)


class PosetCommand(BaseCommand):
    """
    Base for commands that read one poset file.

    Subclasses implement ``run(doc, **options)``; any PosetError raised
    there becomes a CommandError with exit status 2.
    """

    takes_file = True

    def add_arguments(self, parser):
        if self.takes_file:
            parser.add_argument("file", help="poset file (text format, or JSON when it ends in .json)")

    def handle(self, *args, **options):
        try:
            if self.takes_file:
                doc = load_document(options["file"])
                return self.run(doc, **options)
            return self.run(None, **options)
        except PosetError as e:
            logger.warning(f"{self.__module__.rsplit('.', 1)[-1]} failed: {e}")
            raise CommandError(str(e), returncode=2) from e

    def run(self, doc: PosetDocument, **options):
        raise NotImplementedError

    def write_lines(self, lines):
        for line in lines:
            self.stdout.write(line)
