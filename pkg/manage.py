#!/usr/bin/env python
"""Django's command-line utility for administrative tasks."""
import os
import sys


def main(argv=None):
    """Run administrative tasks; returns the exit status."""
    argv = list(sys.argv if argv is None else argv)
    os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'config.settings')
    try:
        from django.core.management import execute_from_command_line
    except ImportError as exc:
        raise ImportError(
            "Couldn't import Django. Are you sure it's installed and "
            "available on your PYTHONPATH environment variable? Did you "
            "forget to activate a virtual environment?"
        ) from exc
    if len(argv) < 2:
        # No subcommand is a usage error.
        execute_from_command_line(argv[:1] + ['help'])
        return 2
    try:
        execute_from_command_line(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 1
    return 0


if __name__ == '__main__':
    sys.exit(main())
