"""Command-line surface: parser, printer, property suites."""
