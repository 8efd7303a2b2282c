from .cli_report import main
import sys

sys.exit(main())
