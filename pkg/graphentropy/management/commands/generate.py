from graphentropy.services import GenerateService
from graphentropy.utils import write_output

from ._base import GraphEntropyCommand


class Command(GraphEntropyCommand):
    help = "Draw one graph from a generator spec and print it as an edge list"

    def add_arguments(self, parser):
        parser.add_argument('--source', required=True, help="Generator spec, e.g. 'ba:n=1200,m0=4,m=4'")
        parser.add_argument('--seed', type=int, default=0)
        self.add_output_argument(parser)

    def handle(self, *args, **options):
        text = self.unwrap(GenerateService.draw(options['source'], options['seed']))
        write_output(text, options['out'], self.stdout)
