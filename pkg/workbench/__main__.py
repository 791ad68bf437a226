"""Allow running the workbench as `python -m workbench`."""

from workbench.main import main

main()
