# Image model, functionals, curves, optimizer and export
