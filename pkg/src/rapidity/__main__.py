import sys

from rapidity.cli import main

sys.exit(main())
