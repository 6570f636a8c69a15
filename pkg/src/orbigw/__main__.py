import sys

from orbigw.cli import main

sys.exit(main())
