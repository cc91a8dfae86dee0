from setuptools import setup, find_packages

setup(
    name="maslov-analysis-sdk",
    version="0.1.0",
    description="SDK for conjugate points, Maslov and Conley-Zehnder indices of constant symplectic systems",
    author="Your Name",
    packages=find_packages(where="src"),
    package_dir={"": "src"},
    install_requires=[
        "numpy>=1.20.0",
        "scipy>=1.7.0",  # linalg, expm, hierarchical clustering, scalar minimization
        "python-dotenv>=0.19.0",  # For MASLOV_TOL_OVERRIDE in .env files
    ],
    extras_require={
        "test": ["pytest>=7.0"],
    },
    entry_points={
        "console_scripts": [
            "maslov-analysis=maslov_analysis.cli:main",
        ],
    },
    python_requires=">=3.8",
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Intended Audience :: Science/Research",
        "Topic :: Scientific/Engineering :: Mathematics",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.8",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
    ],
)
