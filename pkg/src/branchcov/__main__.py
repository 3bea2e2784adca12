from branchcov.cli import main

raise SystemExit(main())
