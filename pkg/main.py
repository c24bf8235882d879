import sys

from sphericallab.tools import main

sys.exit(main.run())
