"""Host and numerical stack of a verification campaign.

Oracle lengths depend on the floating-point stack, so a campaign report
records the interpreter and the numpy/scipy builds next to the machine.
"""

import platform
from datetime import datetime

import numpy as np
import psutil
import scipy

from .models import TestBed


def get_test_bed(name: str | None = None) -> TestBed:
    """Describe the machine and numerical stack a campaign runs on.

    Args:
        name: Label of the campaign host; the network node name when omitted
    """
    memory = psutil.virtual_memory().total
    return TestBed(
        name=name or platform.node(),
        cpu=platform.processor() or platform.machine(),
        cores=psutil.cpu_count(logical=False) or psutil.cpu_count() or 1,
        memory_gb=round(memory / 1024**3, 1),
        os=f"{platform.system()} {platform.release()}",
        python=platform.python_version(),
        numpy=np.__version__,
        scipy=scipy.__version__,
        created_at=int(datetime.now().timestamp()),
    )
