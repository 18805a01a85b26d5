import os

KERNEL_COMPRESS_ROOT_DIR = os.path.dirname(os.path.dirname(os.path.realpath(__file__)))
KERNEL_COMPRESS_CASES_DIR = os.path.join(KERNEL_COMPRESS_ROOT_DIR, 'kernel_compress', 'cases')

__version__ = '0.3.0'
