from setuptools import setup

def get_version(name):
    import os.path
    path = os.path.join(name, '_version')
    if not os.path.exists(path):
        return "0.0.0"
    with open(path) as f:
        return f.read().strip()

setup(
    name='aqil',
    version=get_version('aqil'),
    description='Deep Q-learning on CartPole that first imitates a PID expert, then reinforces',
    packages=["aqil"],
    package_data={
        "aqil": ["_version"]
    },
    entry_points={
        'console_scripts': [
            'aqil = aqil.cli:main'
        ],
    },
    install_requires=[
        'numpy',
        'pyyaml',
        'six',
    ],
    extras_require={
        'svg': ['matplotlib'],
    },
    test_suite='tests',
    license='Apache Software License 2.0',
    classifiers=(
        'Development Status :: 2 - Beta',
        'Intended Audience :: Science/Research',
        'Natural Language :: English',
        'Programming Language :: Python',
        'Programming Language :: Python :: 3',
        'License :: OSI Approved :: Apache Software License',
        'Topic :: Scientific/Engineering :: Artificial Intelligence',
    ),
    keywords='reinforcement-learning imitation-learning dqn cartpole pid',
)
