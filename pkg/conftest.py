import os

import django

os.environ.setdefault("DJANGO_SETTINGS_MODULE", "finspace.settings")
django.setup()
