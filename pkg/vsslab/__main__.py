import sys

from vsslab.harness.cli import main

sys.exit(main())
