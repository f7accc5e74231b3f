"""File formats, the example corpus, generator search, reports and the CLI."""
