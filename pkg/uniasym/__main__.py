"""``python -m uniasym`` 진입점"""

import sys

from uniasym.cli import main

sys.exit(main())
