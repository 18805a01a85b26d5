from setuptools import find_packages, setup

setup(
    name='kernel_compress',
    version='0.3.0',
    author='kernel_compress developers',
    license="BSD-3-Clause",
    packages=find_packages(exclude=['kc_core', 'kc_core.*']),
    description='Coreset compression of kernel mean embeddings: command line, acceptance cases and plots',
    python_requires='>=3.8',
    install_requires=['kc_core',
                      'torch>=1.10.0',
                      'numpy>=1.16.4',
                      'matplotlib',
                      'tensorboard>=2.4.0'],
    extras_require={'test': ['pytest>=6.0']},
    entry_points={'console_scripts': ['kc=kernel_compress.scripts.kc:run']},
)
