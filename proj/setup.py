from pybind11.setup_helpers import Pybind11Extension, build_ext
from setuptools import setup

ext = Pybind11Extension(
    "linkopt._linkopt",
    sources=[
        "python/bindings.cpp",
        "src/modulation.cpp",
        "src/per.cpp",
        "src/energy.cpp",
        "src/oracle.cpp",
        "src/optimizer.cpp",
        "src/config.cpp",
        "src/commands.cpp",
    ],
    include_dirs=["include", "vendor"],
    cxx_std=20,
)

setup(ext_modules=[ext], cmdclass={"build_ext": build_ext})
