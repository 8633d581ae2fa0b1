import os.path
import re

from setuptools import find_packages, setup


def find_version(*paths):
    fname = os.path.join(os.path.dirname(__file__), *paths)
    with open(fname, encoding='utf-8') as fp:
        code = fp.read()
    match = re.search(r"^__version__ = ['\"]([^'\"]*)['\"]", code, re.M)
    if match:
        return match.group(1)
    raise RuntimeError("Unable to find version string.")


setup(
    name='pyvisguard',
    version=find_version('pyvisguard', '__init__.py'),
    description='Vertex guards for polygons with holes from minimal visibility cells',
    author='The PyVisGuard developers',
    classifiers=[
        'Development Status :: 3 - Alpha',
        'License :: OSI Approved :: MIT License',
        'Programming Language :: Python :: 3.8',
        'Programming Language :: Python :: 3.9',
        'Programming Language :: Python :: 3.10',
        'Programming Language :: Python :: 3.11'],
    install_requires=['numpy>=1.17', 'matplotlib', 'setuptools', 'sortedcontainers'],
    extras_require={'test': ['pytest']},
    python_requires='>=3.8',
    packages=find_packages(),
    include_package_data=True,
    package_data={
        'pyvisguard': [
            'examples/data/*.txt']},
    entry_points={
        'console_scripts': ['pyvisguard=pyvisguard.cli:main']},
)
