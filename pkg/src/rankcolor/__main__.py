import sys

from rankcolor.cli import main

sys.exit(main())
