from graphentropy.services import BoundsCheckService

from ._base import GraphEntropyCommand


class Command(GraphEntropyCommand):
    help = "Check entropy lower bounds, regime classification and ER thresholds on random graphs and synthetic spectra"

    def add_arguments(self, parser):
        parser.add_argument('--samples', type=int, default=None, help="Number of random graphs")
        parser.add_argument('--seed', type=int, default=None)

    def handle(self, *args, **options):
        result = BoundsCheckService.run(options['samples'], options['seed'])
        report = result.data
        if report is not None:
            for line in report.violations:
                self.stdout.write(f"FAILED {line}")
            self.stdout.write(
                f"{len(report.entries)} bound checks, {len(report.violations)} violation(s)"
            )
        self.unwrap(result)
