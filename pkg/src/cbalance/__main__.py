import sys

from cbalance.cli import main

sys.exit(main())
