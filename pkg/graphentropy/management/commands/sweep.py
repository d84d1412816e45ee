from graphentropy.conf import get_setting
from graphentropy.services import SweepService

from ._base import GraphEntropyCommand


class Command(GraphEntropyCommand):
    help = (
        "Entropy curve over a tau grid as CSV. Generator sources are "
        "ensemble-averaged over --samples draws; file sources give one curve."
    )

    def add_arguments(self, parser):
        self.add_source_arguments(parser)
        parser.add_argument('--tau-min', type=float, default=None)
        parser.add_argument('--tau-max', type=float, default=None)
        parser.add_argument('--tau-points', type=int, default=None)
        parser.add_argument(
            '--tau-log', dest='tau_log', action='store_true', default=None,
            help="Log-spaced grid (default)",
        )
        parser.add_argument(
            '--tau-linear', dest='tau_log', action='store_false', default=None,
            help="Linearly spaced grid",
        )
        parser.add_argument('--samples', type=int, default=None, help="Ensemble size")
        parser.add_argument('--seed', type=int, default=None)
        parser.add_argument(
            '--matched-er', action='store_true',
            help="Sweep ER replicas with p = 2m/n^2 matched to the (preprocessed) source graph",
        )
        parser.add_argument('--workers', type=int, default=None, help="Threads for ensemble members")
        self.add_output_argument(parser)

    def handle(self, *args, **options):
        keys = (
            'source', 'kind', 'tau_min', 'tau_max', 'tau_points', 'tau_log',
            'samples', 'seed', 'lcc', 'fraction', 'matched_er',
        )
        config = {key: options[key] for key in keys if options.get(key) is not None}
        workers = options['workers'] or get_setting('ENSEMBLE_WORKERS')
        curve = self.unwrap(SweepService.run(config, workers=workers))
        self.emit_csv(SweepService.HEADER, SweepService.rows(curve), options['out'])
