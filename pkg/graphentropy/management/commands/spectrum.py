from graphentropy.services import SpectrumService

from ._base import GraphEntropyCommand


class Command(GraphEntropyCommand):
    help = "Print the eigenvalues of a graph matrix, largest first, as CSV"

    def add_arguments(self, parser):
        self.add_source_arguments(parser)
        parser.add_argument('--seed', type=int, default=0, help="Seed for random generator specs")
        self.add_output_argument(parser)

    def handle(self, *args, **options):
        spectrum = self.unwrap(SpectrumService.compute(
            options['source'],
            options['kind'],
            seed=options['seed'],
            lcc=options['lcc'],
            fraction=options['fraction'],
        ))
        self.emit_csv(('eigenvalue',), ((float(v),) for v in spectrum.values), options['out'])
