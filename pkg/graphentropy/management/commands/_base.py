import logging

from django.core.management.base import BaseCommand, CommandError

from graphentropy.schemas import CommandResult, MatrixKind
from graphentropy.utils import render_csv, write_output

logger = logging.getLogger(__name__)

KIND_CHOICES = [kind.value for kind in MatrixKind]


class GraphEntropyCommand(BaseCommand):
    """Shared plumbing: service results become exit codes, CSV goes to --out"""

    def add_output_argument(self, parser):
        parser.add_argument(
            '--out', default='-',
            help="Output file path; '-' (default) writes to stdout",
        )

    def add_source_arguments(self, parser):
        parser.add_argument(
            '--source', required=True,
            help="Generator spec such as 'er:n=1200,p0=10.5' or an edge-list path",
        )
        parser.add_argument('--kind', choices=KIND_CHOICES, default='lap')
        parser.add_argument('--lcc', action='store_true', help="Keep only the largest connected component")
        parser.add_argument(
            '--fraction', type=float, default=None,
            help="Keep the BFS-nearest fraction of vertices around the highest-degree vertex",
        )

    def unwrap(self, result: CommandResult):
        """Raise CommandError carrying the result's exit code on failure"""
        if not result.success:
            raise CommandError(result.message, returncode=int(result.exit_code))
        logger.info(result.message)
        return result.data

    def emit_csv(self, header, rows, out):
        write_output(render_csv(header, rows), out, self.stdout)
