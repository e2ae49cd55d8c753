# Subcommands of the visibility CLI
