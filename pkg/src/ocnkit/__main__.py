from ocnkit.cli import main

raise SystemExit(main())
