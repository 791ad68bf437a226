"""QML workbench: batch command-line front end for the qml library."""

__version__ = "0.1.0"
