#!/usr/bin/env python3
# -*- coding: utf-8 -*-
# __init__.py

# --- import -----------------------------------
# import from standard lib
# import from other lib
# import from my project

__all__ = (
    "__author__",
    "__email__",
    "__version__",
)

__author__ = """varord developers"""
__email__ = "varord@users.noreply.github.com"
__version__ = "0.3.0"

# where configuration files are stored
__pkg_cfg__ = f"{__package__}.cfg"
