import sys

from genli.cli import main

sys.exit(main())
