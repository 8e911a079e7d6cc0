from setuptools import setup

setup(name='summ',
      version='0.2',
      description='Summary Markov models for event sequences',
      author='The summ authors',
      packages=['summ'],
      python_requires='>=3.8',
      install_requires=['numpy>=1.22', 'pandas>=1.5', 'networkx>=2.8'],
      extras_require={'test': ['pynose>=1.4.8']},
      entry_points={'console_scripts': ['summ=summ.cli:main']},
     )
