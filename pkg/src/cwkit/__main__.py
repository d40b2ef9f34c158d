from cwkit.cli import main

raise SystemExit(main())
