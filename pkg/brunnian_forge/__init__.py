"""brunnian_forge - Brunnian link families and hyperbolicity certificate checks"""

__version__ = "0.1.0"
