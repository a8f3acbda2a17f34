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
    # Delegates the whole native build to CMake, then copies the staged
    # extension next to the package sources setuptools laid out.
    def build_extension(self, ext):
        source_dir = Path(__file__).resolve().parent
        build_dir = Path(self.build_temp).resolve() / "cmake"
        extdir = Path(self.get_ext_fullpath(ext.name)).resolve().parent
        cfg = "Debug" if self.debug else "Release"
        subprocess.run(
            [
                "cmake",
                "-S", str(source_dir),
                "-B", str(build_dir),
                f"-DCMAKE_BUILD_TYPE={cfg}",
                "-DABCMETA_BUILD_TESTS=OFF",
                "-DABCMETA_BUILD_CLI=OFF",
                f"-DPython3_EXECUTABLE={sys.executable}",
            ],
            check=True,
        )
        subprocess.run(
            [
                "cmake",
                "--build", str(build_dir),
                "--target", "_abcmeta",
                "-j", str(os.cpu_count() or 2),
            ],
            check=True,
        )
        staged = build_dir / "python" / "abcmeta"
        module = next(staged.glob("_abcmeta*"))
        extdir.mkdir(parents=True, exist_ok=True)
        self.copy_file(str(module), str(extdir / module.name))


setup(
    packages=["abcmeta"],
    package_dir={"": "python"},
    ext_modules=[CMakeExtension("abcmeta._abcmeta")],
    cmdclass={"build_ext": CMakeBuild},
)
