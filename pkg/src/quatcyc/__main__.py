import sys

from quatcyc.cli import main

sys.exit(main())
