import sys

from kurepa_search.cli import main

sys.exit(main())
