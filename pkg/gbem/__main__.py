"""python -m gbem"""
import sys

from gbem.cli.main import main

sys.exit(main())
