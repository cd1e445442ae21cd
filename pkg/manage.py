#!/usr/bin/env python
"""Command-line entry point: `python manage.py <command> [options]` (depth, pipeline, gen, ...)."""
import os
import sys


def main():
    """Run a tukey_privacy management command."""
    os.environ.setdefault("DJANGO_SETTINGS_MODULE", "tukey_privacy.settings")
    try:
        from django.core.management import execute_from_command_line
    except ImportError as exc:
        raise ImportError(
            "Couldn't import Django. Install the project (uv sync) and make sure "
            "src/ is importable before running tukey commands."
        ) from exc
    execute_from_command_line(sys.argv)


if __name__ == "__main__":
    main()
