import sys

from pansharp.cli import main

sys.exit(main())
