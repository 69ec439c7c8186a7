import sys

from mvhom.cli import main

sys.exit(main())
