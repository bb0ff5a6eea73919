from .settings import *
from .constants import *

__all__ = ["settings", "constants"]
