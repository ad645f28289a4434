"""Entry point for `python -m gstructures`"""

from gstructures.cli import main

main()
