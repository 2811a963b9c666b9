from .colors import *
from .config import FracConfig, RunConfig, resolve_config
from .search import *
from .tables import *
