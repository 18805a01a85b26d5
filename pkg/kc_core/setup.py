from setuptools import find_packages, setup

setup(name='kc_core',
      version='0.3.0',
      author='kernel_compress developers',
      license="BSD-3-Clause",
      packages=find_packages(),
      description='Kernel mean embedding compression, spectral diameter bounds and herding diagnostics in pytorch',
      python_requires='>=3.8',
      install_requires=[
            "torch>=1.10.0",
            "numpy>=1.16.4",
            "tensorboard>=2.4.0"],
)
