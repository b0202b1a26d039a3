import sys

from genergy.main import main

sys.exit(main())
