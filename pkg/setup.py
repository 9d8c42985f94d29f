from setuptools import setup


with open("requirements.txt") as f:
    requirements = f.read().splitlines()


with open("README.md", "r", encoding="utf-8") as fh:
    long_description = fh.read()
    # patch for unicodes
    long_description = long_description.replace("≤", "<=")
    long_description = long_description.replace("≥", ">=")


setup(
    name="dkverify",
    packages=["dkverify"],
    version="0.1.0",
    description="Exact re-derivation of the finite certificates behind the non-unimodality of the prime divisor densities d_k(p).",
    long_description=long_description,
    long_description_content_type="text/markdown",
    license="Apache License 2.0",
    install_requires=requirements,
    entry_points={
        "console_scripts": ["dkverify=dkverify.cli:main"],
    },
    keywords=[
        "primes",
        "sieve",
        "interval arithmetic",
        "certificates",
        "number theory",
        "verification",
    ],
    classifiers=[
        "Development Status :: 4 - Beta",
        "Operating System :: POSIX",
        "Operating System :: MacOS :: MacOS X",
        "Topic :: Scientific/Engineering :: Mathematics",
        "Intended Audience :: Science/Research",
        "Intended Audience :: Education",
        "License :: OSI Approved :: Apache Software License",
        "Programming Language :: Python :: 3.8",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
    ],
    python_requires=">=3.8",
    scripts=[],
)
