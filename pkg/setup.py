from setuptools import setup

setup(
    name="chiral-dirac",
    version="0.1.0",
    description="Spinor-algebra verification toolkit for the chiral Dirac equation",
    py_modules=[
        "api",
        "cde",
        "cli",
        "clifford",
        "config",
        "lagrangian",
        "models",
        "projectors",
        "symmetries",
        "tensor_core",
        "verify",
    ],
    python_requires=">=3.9",
    install_requires=[
        "numpy",
        "scipy",
        "pandas",
        "pydantic>=2",
        "fastapi",
        "uvicorn",
        "python-dotenv",
    ],
    entry_points={"console_scripts": ["cde=cli:main"]},
)
