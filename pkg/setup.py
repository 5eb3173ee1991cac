import numpy
from Cython.Build import cythonize
from setuptools import Extension, setup

extensions = [
    Extension(
        "tmtree._tmt_ext",
        ["src/tmtree/_tmt_ext.pyx"],
        include_dirs=["src/tmtree", numpy.get_include()],
        extra_compile_args=["-O3", "-fopenmp"],
        extra_link_args=["-fopenmp"],
        # the pure-Python kernels take over if this fails to build
        optional=True,
    )
]

setup(
    ext_modules=cythonize(extensions, compiler_directives={"language_level": "3"}),
)
