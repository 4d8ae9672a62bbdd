"""
Command pages: one handler per CLI subcommand. Each handler takes a
JobParams and returns a result dict carrying a boolean `passed`.
"""
from .constructions_pages import COMMANDS as CONSTRUCTION_COMMANDS
from .verify_pages import COMMANDS as VERIFY_COMMANDS
from .multilattice_pages import COMMANDS as MULTILATTICE_COMMANDS
from .steinhaus_pages import COMMANDS as STEINHAUS_COMMANDS
from .spectra_pages import COMMANDS as SPECTRA_COMMANDS
from .report_pages import COMMANDS as REPORT_COMMANDS, render_markdown, render_text
from .inputs import JobParams

COMMANDS = {
    **CONSTRUCTION_COMMANDS,
    **VERIFY_COMMANDS,
    **MULTILATTICE_COMMANDS,
    **STEINHAUS_COMMANDS,
    **SPECTRA_COMMANDS,
    **REPORT_COMMANDS,
}

__all__ = [
    'COMMANDS',
    'JobParams',
    'render_text',
    'render_markdown',
]
