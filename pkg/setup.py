from setuptools import setup, find_packages

setup(
    name="anyon-sim",
    version="0.1.0",
    description="Simulator and numerical toolkit for topological quantum computation with Ising anyons",
    author="Surya B",
    author_email="myselfsuryaaz@gmail.com",
    packages=find_packages(where="src"),
    package_dir={"": "src"},
    python_requires=">=3.8",
    install_requires=[
        "numpy>=1.24.3",
        "scipy>=1.11.1",
        "pandas>=2.1.0",
        "networkx>=3.2",
        "sympy>=1.12",
        "joblib>=1.3",
    ],
    entry_points={
        "console_scripts": [
            "anyon-sim=frontend.main:main",
        ],
    },
)
