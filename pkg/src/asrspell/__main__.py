import sys

from asrspell.cli import main

sys.exit(main())
