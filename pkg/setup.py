import os
from setuptools import setup, find_packages


def gen_data_files(src_dir):
    """
    lists the files under ``src_dir`` relative to its parent package, in the
    format expected by ``package_data``
    """
    fpaths = []
    base = os.path.dirname(src_dir)
    for root, _, files in os.walk(src_dir):
        for f in files:
            fpaths.append(os.path.relpath(os.path.join(root, f), base))
    return fpaths


setup(
    name='nhc',
    version='0.1.0',
    description='Nearest Hub Clustering: incremental community detection on dynamic graphs.',
    long_description=open('README.md').read(),
    long_description_content_type='text/markdown',
    license='MIT',
    packages=find_packages(exclude=['tests']),
    package_data={'nhc': gen_data_files('nhc/data')},
    include_package_data=True,
    install_requires=[
        'fire',
        'jsonnet',
        'networkx>=3.0',
        'numpy',
        'scikit-learn',
        'tqdm',
    ],
    extras_require={
        'test': ['pytest'],
    },
    entry_points={
        'console_scripts': ['nhc=nhc.cli:main'],
    },
    classifiers=[
        'Programming Language :: Python :: 3',
        'License :: OSI Approved :: MIT License',
        'Operating System :: OS Independent',
    ],
    python_requires='>=3.8',
)
