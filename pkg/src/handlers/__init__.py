"""Command handlers for the CLI subcommands"""

from .commands import CommandHandler

__all__ = ['CommandHandler']
