import sys

from mogp.cli import main

sys.exit(main())
