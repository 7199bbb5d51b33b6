"""CMake-driven build of the _rtglab extension.

scikit-build-core would be the natural backend here, but plain setuptools
with a cmake build_ext keeps the dependency footprint to what ships with the
toolchain. `pip install . --no-build-isolation` is the supported path.
"""

import os
import subprocess
import sys
from pathlib import Path

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class CMakeExtension(Extension):
    def __init__(self, name):
        super().__init__(name, sources=[])


class CMakeBuild(build_ext):
    def build_extension(self, ext):
        ext_path = Path(self.get_ext_fullpath(ext.name)).resolve()
        ext_dir = ext_path.parent
        ext_dir.mkdir(parents=True, exist_ok=True)
        build_dir = Path(self.build_temp).resolve() / "cmake"
        build_dir.mkdir(parents=True, exist_ok=True)
        source_dir = Path(__file__).parent.resolve()
        cfg = "Release"
        args = [
            f"-DCMAKE_BUILD_TYPE={cfg}",
            f"-DPython3_EXECUTABLE={sys.executable}",
            "-DRTGLAB_BUILD_TESTS=OFF",
        ]
        subprocess.run(["cmake", str(source_dir), *args], cwd=build_dir, check=True)
        subprocess.run(
            ["cmake", "--build", ".", "--target", "_rtglab", "-j", str(os.cpu_count() or 2)],
            cwd=build_dir,
            check=True,
        )
        built = None
        for candidate in (build_dir / "bindings").glob("_rtglab*"):
            if candidate.suffix in (".so", ".pyd", ".dylib"):
                built = candidate
        if built is None:
            raise RuntimeError("cmake did not produce the _rtglab extension")
        target = ext_dir / built.name
        target.write_bytes(built.read_bytes())


setup(
    ext_modules=[CMakeExtension("rtglab._rtglab")],
    cmdclass={"build_ext": CMakeBuild},
)
