import sys

from fuzzbl.cli import main

sys.exit(main())
