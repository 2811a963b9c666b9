__title__ = "fracbern"
__author__ = "fracbern contributors"
__license__ = "MIT"
__version__ = "0.3.0"

from . import kernels, logs, one_free, proofcheck, quadrature, specialfn, two_free, utils
from .enums import *
from .errors import *
from .kernels import *
from .logs import *
from .one_free import *
from .plotting import *
from .proofcheck import *
from .quadrature import *
from .specialfn import *
from .two_free import *
from .utils import *
