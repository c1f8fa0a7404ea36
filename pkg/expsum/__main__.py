import sys

from expsum.main import main

sys.exit(main())
