import sys

from zdwalk.cli import main

sys.exit(main())
