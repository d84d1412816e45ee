from django.core.management.base import CommandError

from graphentropy.services import OracleCheckService
from graphentropy.utils import split_floats

from ._base import GraphEntropyCommand


class Command(GraphEntropyCommand):
    help = "Cross-check eigensolver entropies against closed forms for complete, bipartite, star, empty and cycle graphs"

    def add_arguments(self, parser):
        parser.add_argument('--max-n', type=int, default=None, help="Largest graph order to check")
        parser.add_argument('--taus', default=None, help="Comma-separated tau values, e.g. 0.1,1,10")

    def handle(self, *args, **options):
        try:
            taus = split_floats(options['taus']) if options['taus'] is not None else None
        except ValueError:
            raise CommandError(f"--taus must be comma-separated numbers, got '{options['taus']}'", returncode=2)

        result = OracleCheckService.run(options['max_n'], taus)
        report = result.data
        if report is not None:
            for line in report.skipped:
                self.stdout.write(f"skipped {line}")
            for line in report.violations:
                self.stdout.write(f"FAILED {line}")
            self.stdout.write(f"max discrepancy {report.max_discrepancy:.3e} over {len(report.entries)} checks")
        self.unwrap(result)
