from setuptools import setup, find_packages

with open("README.md", "r") as fh:
    long_description = fh.read()

setup(
    name="growfrag",
    version="0.1.0",
    author="growfrag developers",
    author_email="example@example.com",
    description="Explicit solution and numerical verification of a growth-fragmentation equation",
    long_description=long_description,
    long_description_content_type="text/markdown",
    packages=find_packages(exclude=["tests", "examples", "examples.*"]),
    classifiers=[
        "Programming Language :: Python :: 3",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
        "Development Status :: 4 - Beta",
        "Intended Audience :: Science/Research",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
    python_requires=">=3.8",
    install_requires=[
        "numpy>=1.20.0",
        "scipy>=1.6.0",
        "pandas>=1.2.0",
        "rich>=12.0.0",  # For colorful CLI
    ],
    extras_require={
        "dev": [
            "pytest>=6.0.0",
            "pytest-cov>=2.10.0",
            "black>=20.8b1",
            "mpmath>=1.2.0",  # High-precision oracles in tests
        ],
    },
    entry_points={
        "console_scripts": [
            "growfrag=growfrag.cli:main",
        ],
    },
    include_package_data=True,
)
